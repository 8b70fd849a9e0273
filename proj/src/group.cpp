#include "tubealg/group.hpp"

#include "tubealg/error.hpp"

#include <algorithm>
#include <numeric>

namespace tubealg {

FiniteGroup FiniteGroup::cyclic(int n)
{
    return product({n});
}

FiniteGroup FiniteGroup::product(std::vector<int> factors)
{
    if (factors.empty()) throw InputError("product group needs at least one factor");
    for (int n : factors)
        if (n < 1) throw InputError("cyclic factor must be >= 1, got " + std::to_string(n));

    FiniteGroup g;
    g.factors_ = std::move(factors);
    std::size_t k = g.factors_.size();
    g.order_ = 1;
    for (int n : g.factors_) g.order_ *= static_cast<std::size_t>(n);

    // Mixed radix with the last factor varying fastest.
    g.coords_.assign(g.order_ * k, 0);
    for (std::size_t x = 0; x < g.order_; ++x) {
        std::size_t rest = x;
        for (std::size_t i = k; i-- > 0;) {
            g.coords_[x * k + i] = static_cast<int>(rest % static_cast<std::size_t>(g.factors_[i]));
            rest /= static_cast<std::size_t>(g.factors_[i]);
        }
    }
    g.mul_.resize(g.order_ * g.order_);
    std::vector<int> c(k);
    for (std::size_t a = 0; a < g.order_; ++a) {
        for (std::size_t b = 0; b < g.order_; ++b) {
            for (std::size_t i = 0; i < k; ++i)
                c[i] = (g.coords_[a * k + i] + g.coords_[b * k + i]) % g.factors_[i];
            g.mul_[a * g.order_ + b] = g.from_coords(c);
        }
    }
    g.fill_inverses();
    return g;
}

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<Element>> table, std::vector<std::string> labels)
{
    std::size_t n = table.size();
    if (n == 0) throw ValidationError("group table is empty");
    for (std::size_t a = 0; a < n; ++a) {
        if (table[a].size() != n)
            throw ValidationError("group table row " + std::to_string(a) + " has length " +
                                  std::to_string(table[a].size()) + ", expected " + std::to_string(n));
        for (std::size_t b = 0; b < n; ++b)
            if (table[a][b] >= n)
                throw ValidationError("group table entry (" + std::to_string(a) + "," + std::to_string(b) +
                                      ") out of range");
    }
    if (!labels.empty() && labels.size() != n) throw ValidationError("labels length does not match table size");

    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (table[table[a][b]][c] != table[a][table[b][c]])
                    throw ValidationError("group table not associative at triple (" + std::to_string(a) + "," +
                                          std::to_string(b) + "," + std::to_string(c) + ")");

    std::optional<std::size_t> e;
    for (std::size_t x = 0; x < n && !e; ++x) {
        bool ok = true;
        for (std::size_t y = 0; y < n && ok; ++y) ok = table[x][y] == y && table[y][x] == y;
        if (ok) e = x;
    }
    if (!e) throw ValidationError("group table has no two-sided identity");

    for (std::size_t x = 0; x < n; ++x) {
        bool found = false;
        for (std::size_t y = 0; y < n && !found; ++y) found = table[x][y] == *e && table[y][x] == *e;
        if (!found) throw ValidationError("element " + std::to_string(x) + " has no inverse");
    }

    // Swap the identity into slot 0.
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::swap(perm[0], perm[*e]);  // perm: old -> new (an involution)

    FiniteGroup g;
    g.order_ = n;
    g.mul_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) g.mul_[perm[a] * n + perm[b]] = perm[table[a][b]];
    if (!labels.empty()) {
        g.labels_.resize(n);
        for (std::size_t a = 0; a < n; ++a) g.labels_[perm[a]] = labels[a];
    }
    g.fill_inverses();
    return g;
}

void FiniteGroup::fill_inverses()
{
    inv_.assign(order_, 0);
    for (std::size_t a = 0; a < order_; ++a)
        for (std::size_t b = 0; b < order_; ++b)
            if (mul(a, b) == 0) {
                inv_[a] = b;
                break;
            }
}

bool FiniteGroup::is_abelian() const
{
    for (std::size_t a = 0; a < order_; ++a)
        for (std::size_t b = a + 1; b < order_; ++b)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

std::size_t FiniteGroup::element_order(Element a) const
{
    std::size_t k = 1;
    for (Element x = a; x != identity(); x = mul(x, a)) ++k;
    return k;
}

std::size_t FiniteGroup::exponent() const
{
    std::size_t e = 1;
    for (std::size_t a = 0; a < order_; ++a) e = std::lcm(e, element_order(a));
    return e;
}

std::string FiniteGroup::label(Element a) const
{
    if (!labels_.empty()) return labels_[a];
    if (has_coords()) {
        auto c = coords(a);
        if (c.size() == 1) return std::to_string(c[0]);
        std::string s = "(";
        for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
        return s + ")";
    }
    return std::to_string(a);
}

std::vector<std::string> FiniteGroup::labels() const
{
    std::vector<std::string> out;
    for (Element a = 0; a < order_; ++a) out.push_back(label(a));
    return out;
}

std::span<int const> FiniteGroup::coords(Element a) const
{
    if (!has_coords()) throw Unsupported("group has no cyclic coordinates");
    return {coords_.data() + a * factors_.size(), factors_.size()};
}

Element FiniteGroup::from_coords(std::span<int const> c) const
{
    if (c.size() != factors_.size()) throw InputError("coordinate tuple has wrong length");
    std::size_t x = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        int n = factors_[i];
        int r = ((c[i] % n) + n) % n;
        x = x * static_cast<std::size_t>(n) + static_cast<std::size_t>(r);
    }
    return x;
}

std::vector<std::vector<Element>> FiniteGroup::table() const
{
    std::vector<std::vector<Element>> t(order_, std::vector<Element>(order_));
    for (std::size_t a = 0; a < order_; ++a)
        for (std::size_t b = 0; b < order_; ++b) t[a][b] = mul(a, b);
    return t;
}

GroupHom GroupHom::make(GroupPtr source, GroupPtr target, std::vector<Element> map)
{
    if (map.size() != source->order()) throw ValidationError("homomorphism table has wrong length");
    for (Element y : map)
        if (y >= target->order()) throw ValidationError("homomorphism value out of range");
    for (Element x = 0; x < source->order(); ++x)
        for (Element y = 0; y < source->order(); ++y)
            if (map[source->mul(x, y)] != target->mul(map[x], map[y]))
                throw ValidationError("map is not a homomorphism at (" + std::to_string(x) + "," +
                                      std::to_string(y) + ")");
    return GroupHom{std::move(source), std::move(target), std::move(map)};
}

GroupHom GroupHom::identity(GroupPtr g)
{
    std::vector<Element> map(g->order());
    std::iota(map.begin(), map.end(), Element{0});
    return GroupHom{g, g, std::move(map)};
}

GroupHom GroupHom::trivial(GroupPtr source, GroupPtr target)
{
    std::vector<Element> map(source->order(), target->identity());
    return GroupHom{std::move(source), std::move(target), std::move(map)};
}

std::vector<std::vector<Element>> conjugacy_classes(FiniteGroup const& g)
{
    std::vector<std::vector<Element>> classes;
    std::vector<bool> seen(g.order(), false);
    for (Element x = 0; x < g.order(); ++x) {
        if (seen[x]) continue;
        std::vector<Element> cls;
        for (Element s = 0; s < g.order(); ++s) {
            Element y = g.conj(s, x);
            if (!seen[y]) {
                seen[y] = true;
                cls.push_back(y);
            }
        }
        std::sort(cls.begin(), cls.end());
        classes.push_back(std::move(cls));
    }
    return classes;
}

std::vector<std::size_t> class_index(FiniteGroup const& g)
{
    std::vector<std::size_t> idx(g.order());
    auto classes = conjugacy_classes(g);
    for (std::size_t c = 0; c < classes.size(); ++c)
        for (Element x : classes[c]) idx[x] = c;
    return idx;
}

std::vector<Element> centralizer(FiniteGroup const& g, Element a)
{
    std::vector<Element> out;
    for (Element x = 0; x < g.order(); ++x)
        if (g.mul(a, x) == g.mul(x, a)) out.push_back(x);
    return out;
}

std::optional<Element> Subgroup::local(Element parent) const
{
    auto it = std::lower_bound(embedding.begin(), embedding.end(), parent);
    if (it == embedding.end() || *it != parent) return std::nullopt;
    return static_cast<Element>(it - embedding.begin());
}

Subgroup make_subgroup(FiniteGroup const& g, std::vector<Element> elements)
{
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    if (elements.empty() || elements.front() != g.identity())
        throw ValidationError("subgroup must contain the identity");

    Subgroup sub{nullptr, elements};
    std::size_t n = elements.size();
    std::vector<std::vector<Element>> table(n, std::vector<Element>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            auto k = sub.local(g.mul(elements[i], elements[j]));
            if (!k) throw ValidationError("element set is not closed under multiplication");
            table[i][j] = *k;
        }
    std::vector<std::string> labels;
    for (Element x : elements) labels.push_back(g.label(x));
    sub.group = share(FiniteGroup::from_table(std::move(table), std::move(labels)));
    return sub;
}

}  // namespace tubealg
