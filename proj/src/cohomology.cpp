#include "tubealg/cohomology.hpp"

#include "tubealg/error.hpp"

#include <numeric>
#include <stdexcept>

namespace tubealg {

namespace {

std::size_t ipow(std::size_t base, std::size_t exp)
{
    std::size_t r = 1;
    while (exp-- > 0) r *= base;
    return r;
}

std::vector<Element> unflatten_base(std::size_t index, std::size_t base, std::size_t len)
{
    std::vector<Element> out(len);
    for (std::size_t i = len; i-- > 0;) {
        out[i] = index % base;
        index /= base;
    }
    return out;
}

// Exponent sign applied to a phase: (+1) keeps, (-1) conjugates.
Phase signed_phase(Phase p, int sign)
{
    return sign > 0 ? p : p.conj();
}

}  // namespace

// ---------------------------------------------------------------- GroupCochain

GroupCochain::GroupCochain(GroupPtr group, std::size_t degree)
    : group_(std::move(group)), degree_(degree), values_(ipow(group_->order(), degree))
{
}

GroupCochain GroupCochain::constant(GroupPtr group, std::size_t degree, Phase value)
{
    GroupCochain c(std::move(group), degree);
    std::fill(c.values_.begin(), c.values_.end(), value);
    return c;
}

std::size_t GroupCochain::flat(std::span<Element const> args) const
{
    if (args.size() != degree_)
        throw InputError("cochain of degree " + std::to_string(degree_) + " evaluated on " +
                         std::to_string(args.size()) + " arguments");
    std::size_t idx = 0;
    for (Element a : args) idx = idx * group_->order() + a;
    return idx;
}

std::vector<Element> GroupCochain::unflatten(std::size_t flat_index) const
{
    return unflatten_base(flat_index, group_->order(), degree_);
}

bool GroupCochain::is_normalized() const
{
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (values_[i].is_neutral()) continue;
        for (Element a : unflatten(i))
            if (a == group_->identity()) return false;
    }
    return true;
}

GroupCochain GroupCochain::conj() const
{
    GroupCochain c = *this;
    for (auto& v : c.values_) v = v.conj();
    return c;
}

GroupCochain& GroupCochain::operator*=(GroupCochain const& other)
{
    if (degree_ != other.degree_ || !(*group_ == *other.group_))
        throw InputError("cochain product needs matching group and degree");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] *= other.values_[i];
    return *this;
}

// ------------------------------------------------------------- GroupoidCochain

GroupoidCochain::GroupoidCochain(ActionGroupoid groupoid, std::size_t degree)
    : groupoid_(std::move(groupoid)),
      degree_(degree),
      values_(ipow(groupoid_.num_objects(), degree + 1))
{
}

bool GroupoidCochain::is_normalized() const
{
    if (degree_ == 0) return true;
    bool ok = true;
    groupoid_.for_each_composable(degree_, [&](std::span<Arrow const> t) {
        if (!ok) return;
        for (Arrow g : t)
            if (groupoid_.is_unit(g) && !(*this)(t).is_neutral()) ok = false;
    });
    return ok;
}

GroupoidCochain GroupoidCochain::conj() const
{
    GroupoidCochain c = *this;
    for (auto& v : c.values_) v = v.conj();
    return c;
}

GroupoidCochain& GroupoidCochain::operator*=(GroupoidCochain const& other)
{
    if (degree_ != other.degree_ || !(groupoid_ == other.groupoid_))
        throw InputError("groupoid cochain product needs matching groupoid and degree");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] *= other.values_[i];
    return *this;
}

// ---------------------------------------------------------- EquivariantCochain

EquivariantCochain::EquivariantCochain(GroupPtr group, std::size_t degree)
    : group_(std::move(group)), degree_(degree), values_(ipow(group_->order(), degree + 1))
{
}

std::size_t EquivariantCochain::flat(std::span<Element const> args, Element x) const
{
    if (args.size() != degree_) throw InputError("equivariant cochain evaluated on wrong number of arguments");
    std::size_t idx = 0;
    for (Element a : args) idx = idx * group_->order() + a;
    return idx * group_->order() + x;
}

std::vector<Element> EquivariantCochain::unflatten(std::size_t flat_index) const
{
    return unflatten_base(flat_index, group_->order(), degree_ + 1);
}

// ------------------------------------------------------------------ coboundary

GroupCochain coboundary(GroupCochain const& c)
{
    auto const& g = *c.group();
    std::size_t n = c.degree();
    std::size_t order = g.order();
    GroupCochain out(c.group(), n + 1);
    if (n == 0) return out;  // phi - phi = 0

    std::vector<Element> x(n + 1, 0);
    auto flat_of = [&](auto&& at) {
        std::size_t idx = 0;
        for (std::size_t p = 0; p < n; ++p) idx = idx * order + at(p);
        return idx;
    };
    for (std::size_t idx = 0; idx < out.size(); ++idx) {
        Phase acc = c.value(flat_of([&](std::size_t p) { return x[p + 1]; }));
        for (std::size_t i = 1; i <= n; ++i) {
            // merge positions i-1 and i
            std::size_t f = flat_of([&](std::size_t p) {
                if (p + 1 < i) return x[p];
                if (p + 1 == i) return g.mul(x[p], x[p + 1]);
                return x[p + 1];
            });
            acc *= signed_phase(c.value(f), i % 2 == 0 ? 1 : -1);
        }
        acc *= signed_phase(c.value(flat_of([&](std::size_t p) { return x[p]; })), (n + 1) % 2 == 0 ? 1 : -1);
        out.value(idx) = acc;

        for (std::size_t p = n + 1; p-- > 0;) {
            if (++x[p] < order) break;
            x[p] = 0;
        }
    }
    return out;
}

GroupoidCochain groupoid_coboundary(GroupoidCochain const& c)
{
    auto const& G = c.groupoid();
    std::size_t n = c.degree();
    GroupoidCochain out(G, n + 1);
    std::vector<Arrow> sub(n);
    G.for_each_composable(n + 1, [&](std::span<Arrow const> t) {
        Phase acc;
        if (n == 0) {
            acc = c.on_object(G.dom(t[0])) * c.on_object(G.codom(t[0])).conj();
        } else {
            std::copy(t.begin() + 1, t.end(), sub.begin());
            acc *= c(sub);
            for (std::size_t i = 1; i <= n; ++i) {
                std::size_t w = 0;
                for (std::size_t p = 0; p < n + 1; ++p) {
                    if (p == i - 1) {
                        sub[w++] = G.compose(t[p], t[p + 1]);
                        ++p;
                    } else {
                        sub[w++] = t[p];
                    }
                }
                acc *= signed_phase(c(sub), i % 2 == 0 ? 1 : -1);
            }
            std::copy(t.begin(), t.end() - 1, sub.begin());
            acc *= signed_phase(c(sub), (n + 1) % 2 == 0 ? 1 : -1);
        }
        out.set(t, acc);
    });
    return out;
}

EquivariantCochain equivariant_coboundary(EquivariantCochain const& c)
{
    auto const& g = *c.group();
    std::size_t n = c.degree();
    EquivariantCochain out(c.group(), n + 1);
    std::vector<Element> sub(n);
    for (std::size_t idx = 0; idx < out.values().size(); ++idx) {
        auto full = out.unflatten(idx);
        Element x = full.back();
        std::span<Element const> a(full.data(), n + 1);
        Phase acc;
        if (n == 0) {
            // (a_1 f)(x) f(x)^-1
            acc = c({}, g.conj(g.inv(a[0]), x)) * c({}, x).conj();
        } else {
            std::copy(a.begin() + 1, a.end(), sub.begin());
            acc *= c(sub, g.conj(g.inv(a[0]), x));
            for (std::size_t i = 1; i <= n; ++i) {
                std::size_t w = 0;
                for (std::size_t p = 0; p < n + 1; ++p) {
                    if (p == i - 1) {
                        sub[w++] = g.mul(a[p], a[p + 1]);
                        ++p;
                    } else {
                        sub[w++] = a[p];
                    }
                }
                acc *= signed_phase(c(sub, x), i % 2 == 0 ? 1 : -1);
            }
            std::copy(a.begin(), a.end() - 1, sub.begin());
            acc *= signed_phase(c(sub, x), (n + 1) % 2 == 0 ? 1 : -1);
        }
        out.values()[idx] = acc;
    }
    return out;
}

CocycleCheck is_cocycle(GroupCochain const& c)
{
    auto d = coboundary(c);
    for (std::size_t i = 0; i < d.size(); ++i)
        if (!d.value(i).is_neutral()) {
            auto w = d.unflatten(i);
            return {false, {w.begin(), w.end()}, d.value(i)};
        }
    return {};
}

CocycleCheck is_cocycle(GroupoidCochain const& c)
{
    auto d = groupoid_coboundary(c);
    CocycleCheck result;
    d.groupoid().for_each_composable(d.degree(), [&](std::span<Arrow const> t) {
        if (!result.ok) return;
        Phase v = d(t);
        if (!v.is_neutral()) {
            result.ok = false;
            result.value = v;
            for (Arrow a : t) {
                result.witness.push_back(a.s);
                result.witness.push_back(a.dom);
            }
        }
    });
    return result;
}

CocycleCheck is_cocycle(EquivariantCochain const& c)
{
    auto d = equivariant_coboundary(c);
    for (std::size_t i = 0; i < d.values().size(); ++i)
        if (!d.values()[i].is_neutral()) {
            auto w = d.unflatten(i);
            return {false, {w.begin(), w.end()}, d.values()[i]};
        }
    return {};
}

// ------------------------------------------------------------------ generators

GroupCochain cyclic_generator(int n, int k)
{
    if (n < 1) throw InputError("cyclic generator needs n >= 1");
    if (k < 0 || k >= n)
        throw InputError("cyclic generator needs 0 <= k < n, got k=" + std::to_string(k) + " n=" + std::to_string(n));
    return cyclic_factor_generator(share(FiniteGroup::cyclic(n)), 0, k);
}

GroupCochain cyclic_factor_generator(GroupPtr group, std::size_t factor, int k)
{
    if (!group->has_coords()) throw InputError("cyclic generator needs a group with cyclic coordinates");
    if (factor >= group->factors().size()) throw InputError("factor index out of range");
    int n = group->factors()[factor];
    if (k < 0 || k >= n) throw InputError("cyclic generator needs 0 <= k < n");
    auto const& g = *group;
    return GroupCochain::from_function(group, 3, [&](std::span<Element const> x) {
        std::int64_t a = g.coords(x[0])[factor];
        std::int64_t b = g.coords(x[1])[factor];
        std::int64_t c = g.coords(x[2])[factor];
        return Phase(k * ((a + b) / n) * c, n);
    });
}

GroupCochain product_generator_ij(GroupPtr group, std::size_t i, std::size_t j)
{
    if (!group->has_coords()) throw InputError("product generator needs a group with cyclic coordinates");
    std::size_t m = group->factors().size();
    if (i >= m || j >= m) throw InputError("product generator index out of range");
    if (i == j) throw InputError("product generator phi_ij needs distinct indices");
    auto const& g = *group;
    std::int64_t ni = g.factors()[i], nj = g.factors()[j];
    return GroupCochain::from_function(group, 3, [&](std::span<Element const> x) {
        std::int64_t ai = g.coords(x[0])[i];
        std::int64_t bi = g.coords(x[1])[i];
        std::int64_t cj = g.coords(x[2])[j];
        return Phase(((ai + bi) / ni) * cj, nj);
    });
}

GroupCochain product_generator_ijk(GroupPtr group, std::size_t i, std::size_t j, std::size_t k)
{
    if (!group->has_coords()) throw InputError("product generator needs a group with cyclic coordinates");
    std::size_t m = group->factors().size();
    if (i >= m || j >= m || k >= m) throw InputError("product generator index out of range");
    if (i == j || j == k || i == k) throw InputError("product generator phi_ijk needs distinct indices");
    auto const& g = *group;
    std::int64_t d = std::gcd(std::gcd(g.factors()[i], g.factors()[j]), g.factors()[k]);
    return GroupCochain::from_function(group, 3, [&](std::span<Element const> x) {
        std::int64_t ai = g.coords(x[0])[i];
        std::int64_t bj = g.coords(x[1])[j];
        std::int64_t ck = g.coords(x[2])[k];
        return Phase(ai * bj * ck, d);
    });
}

GroupCochain pullback(GroupHom const& h, GroupCochain const& c)
{
    if (!(*h.target == *c.group())) throw InputError("pullback: cochain does not live on the homomorphism target");
    std::vector<Element> image(c.degree());
    return GroupCochain::from_function(h.source, c.degree(), [&](std::span<Element const> x) {
        for (std::size_t i = 0; i < x.size(); ++i) image[i] = h(x[i]);
        return c(image);
    });
}

// ------------------------------------------------------------ solve_coboundary

namespace {

using i64 = std::int64_t;
using i128 = __int128;

i64 mod(i128 a, i64 m)
{
    i128 r = a % m;
    return static_cast<i64>(r < 0 ? r + m : r);
}

// x*a + y*b = g = gcd(a, b), a, b >= 0
i64 ext_gcd(i64 a, i64 b, i64& x, i64& y)
{
    if (b == 0) {
        x = 1;
        y = 0;
        return a;
    }
    i64 x1 = 0, y1 = 0;
    i64 g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

// ext_gcd, but a plain elimination step when a already divides b so the
// pivot never oscillates between equal entries.
i64 pivot_gcd(i64 a, i64 b, i64& x, i64& y)
{
    if (b % a == 0) {
        x = 1;
        y = 0;
        return a;
    }
    return ext_gcd(a, b, x, y);
}

// Solves M x = rhs over Z/D by diagonalizing with unimodular row and column
// operations. Returns nullopt when inconsistent.
std::optional<std::vector<i64>> solve_mod(std::vector<std::vector<i64>> m, std::vector<i64> rhs, i64 D)
{
    std::size_t rows = m.size();
    std::size_t cols = rows ? m[0].size() : 0;
    std::vector<std::vector<i64>> v(cols, std::vector<i64>(cols, 0));
    for (std::size_t i = 0; i < cols; ++i) v[i][i] = 1;

    auto row_combine = [&](std::size_t r1, std::size_t r2, i64 a, i64 b, i64 c, i64 d) {
        // [r1; r2] <- [[a b]; [c d]] [r1; r2]
        for (std::size_t j = 0; j < cols; ++j) {
            i64 x = m[r1][j], y = m[r2][j];
            m[r1][j] = mod(static_cast<i128>(a) * x + static_cast<i128>(b) * y, D);
            m[r2][j] = mod(static_cast<i128>(c) * x + static_cast<i128>(d) * y, D);
        }
        i64 x = rhs[r1], y = rhs[r2];
        rhs[r1] = mod(static_cast<i128>(a) * x + static_cast<i128>(b) * y, D);
        rhs[r2] = mod(static_cast<i128>(c) * x + static_cast<i128>(d) * y, D);
    };
    auto col_combine = [&](std::size_t c1, std::size_t c2, i64 a, i64 b, i64 c, i64 d) {
        // [c1 c2] <- [c1 c2] [[a c]; [b d]]
        for (std::size_t i = 0; i < rows; ++i) {
            i64 x = m[i][c1], y = m[i][c2];
            m[i][c1] = mod(static_cast<i128>(a) * x + static_cast<i128>(b) * y, D);
            m[i][c2] = mod(static_cast<i128>(c) * x + static_cast<i128>(d) * y, D);
        }
        for (std::size_t i = 0; i < cols; ++i) {
            i64 x = v[i][c1], y = v[i][c2];
            v[i][c1] = mod(static_cast<i128>(a) * x + static_cast<i128>(b) * y, D);
            v[i][c2] = mod(static_cast<i128>(c) * x + static_cast<i128>(d) * y, D);
        }
    };

    std::size_t rank = 0;
    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        std::optional<std::pair<std::size_t, std::size_t>> pivot;
        for (std::size_t i = t; i < rows && !pivot; ++i)
            for (std::size_t j = t; j < cols && !pivot; ++j)
                if (m[i][j] != 0) pivot = {i, j};
        if (!pivot) break;
        if (pivot->first != t) {
            std::swap(m[t], m[pivot->first]);
            std::swap(rhs[t], rhs[pivot->first]);
        }
        if (pivot->second != t) col_combine(t, pivot->second, 0, 1, 1, 0);

        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (m[i][t] == 0) continue;
                i64 a = m[t][t], b = m[i][t], x = 0, y = 0;
                i64 g = pivot_gcd(a, b, x, y);
                row_combine(t, i, x, y, -(b / g), a / g);
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (m[t][j] == 0) continue;
                i64 a = m[t][t], b = m[t][j], x = 0, y = 0;
                i64 g = pivot_gcd(a, b, x, y);
                col_combine(t, j, x, y, -(b / g), a / g);
                dirty = true;
            }
            if (dirty) {
                dirty = false;
                for (std::size_t i = t + 1; i < rows; ++i)
                    if (m[i][t] != 0) dirty = true;
            }
        }
        rank = t + 1;
    }

    std::vector<i64> y(cols, 0);
    for (std::size_t t = 0; t < rows; ++t) {
        if (t < rank) {
            i64 d = m[t][t];
            i64 g = std::gcd(d, D);
            if (rhs[t] % g != 0) return std::nullopt;
            i64 mod_g = D / g;
            i64 x = 0, unused = 0;
            ext_gcd(mod(d / g, mod_g), mod_g, x, unused);
            y[t] = mod(static_cast<i128>(rhs[t] / g) * mod(x, mod_g), mod_g);
        } else if (rhs[t] != 0) {
            return std::nullopt;
        }
    }
    std::vector<i64> sol(cols, 0);
    for (std::size_t i = 0; i < cols; ++i) {
        i128 acc = 0;
        for (std::size_t j = 0; j < cols; ++j) acc = (acc + static_cast<i128>(v[i][j]) * y[j]) % D;
        sol[i] = mod(acc, D);
    }
    return sol;
}

std::optional<GroupCochain> solve_at(GroupCochain const& target, i64 D)
{
    auto const& g = *target.group();
    std::size_t n = target.degree();
    GroupCochain shape(target.group(), n - 1);
    std::size_t unknowns = shape.size();

    std::vector<std::vector<i64>> m(target.size(), std::vector<i64>(unknowns, 0));
    std::vector<i64> rhs(target.size());
    std::vector<Element> sub(n - 1);
    for (std::size_t r = 0; r < target.size(); ++r) {
        auto x = target.unflatten(r);
        auto add = [&](int sign) {
            std::size_t col = 0;
            for (Element e : sub) col = col * g.order() + e;
            m[r][col] = mod(static_cast<i128>(m[r][col]) + sign, D);
        };
        std::copy(x.begin() + 1, x.end(), sub.begin());
        add(1);
        for (std::size_t i = 1; i < n; ++i) {
            std::size_t w = 0;
            for (std::size_t p = 0; p < n; ++p) {
                if (p == i - 1) {
                    sub[w++] = g.mul(x[p], x[p + 1]);
                    ++p;
                } else {
                    sub[w++] = x[p];
                }
            }
            add(i % 2 == 0 ? 1 : -1);
        }
        std::copy(x.begin(), x.end() - 1, sub.begin());
        add(n % 2 == 0 ? 1 : -1);
        Phase t = target.value(r);
        rhs[r] = mod(static_cast<i128>(t.num()) * (D / t.den()), D);
    }

    auto sol = solve_mod(std::move(m), std::move(rhs), D);
    if (!sol) return std::nullopt;
    GroupCochain eta(target.group(), n - 1);
    for (std::size_t i = 0; i < unknowns; ++i) eta.value(i) = Phase((*sol)[i], D);
    if (!(coboundary(eta) == target)) throw std::logic_error("solve_coboundary produced a non-solution");
    return eta;
}

}  // namespace

std::optional<GroupCochain> solve_coboundary(GroupCochain const& target)
{
    if (target.degree() == 0) throw InputError("solve_coboundary needs degree >= 1");
    auto check = is_cocycle(target);
    if (!check.ok) throw ValidationError("solve_coboundary: target is not a cocycle");

    i64 D = 1;
    for (auto const& v : target.values()) D = std::lcm(D, v.den());
    D *= static_cast<i64>(target.group()->exponent());
    for (int attempt = 0; attempt < 2; ++attempt, D *= 2)
        if (auto eta = solve_at(target, D)) return eta;
    return std::nullopt;
}

// --------------------------------------------------- equivariant translation

EquivariantCochain to_equivariant(GroupoidCochain const& c)
{
    auto const& G = c.groupoid();
    auto const& g = *G.group();
    std::size_t n = c.degree();
    EquivariantCochain out(G.group(), n);
    std::vector<Arrow> tuple(n);
    for (std::size_t idx = 0; idx < out.values().size(); ++idx) {
        auto full = out.unflatten(idx);
        Element x = full.back();
        if (n == 0) {
            out.values()[idx] = c.on_object(x);
            continue;
        }
        for (std::size_t i = 0; i < n; ++i) {
            x = g.conj(g.inv(full[i]), x);  // x_i = gamma_i^-1 . x_{i-1}
            tuple[i] = {full[i], x};
        }
        out.values()[idx] = c(tuple);
    }
    return out;
}

GroupoidCochain from_equivariant(EquivariantCochain const& c)
{
    ActionGroupoid G(c.group());
    std::size_t n = c.degree();
    std::vector<Element> args(n);
    return GroupoidCochain::from_function(G, n, [&](auto const& t) -> Phase {
        if constexpr (std::is_same_v<std::decay_t<decltype(t)>, Element>) {
            return c({}, t);
        } else {
            for (std::size_t i = 0; i < n; ++i) args[i] = t[i].s;
            return c(args, G.codom(t[0]));
        }
    });
}

bool residue_identity_check(int n)
{
    if (n < 1) throw InputError("residue identity needs n >= 1");
    auto floor_div = [](int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); };
    auto r = [&](int m) { return m - n * floor_div(m, n); };
    for (int s = -2 * n; s < 2 * n; ++s)
        for (int t = -2 * n; t < 2 * n; ++t) {
            int lhs = r(s) + r(t) - r(s + t);
            int rhs = n * (floor_div(s + t, n) - floor_div(s, n) - floor_div(t, n));
            if (lhs != rhs) return false;
            if (r(s) < 0 || r(s) >= n) return false;
        }
    return true;
}

}  // namespace tubealg
