#include "tubealg/fusion_data.hpp"

#include "tubealg/error.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace tubealg {

namespace {

std::string label_list(SkeletalCategory const& c, std::initializer_list<Simple> xs)
{
    std::string out;
    for (Simple x : xs) out += (out.empty() ? "" : ",") + c.name(x);
    return out;
}

}  // namespace

std::uint64_t SkeletalCategory::key(FLabels const& l, std::size_t rank)
{
    std::uint64_t k = 0;
    for (Simple x : l) k = k * rank + x;
    return k;
}

SkeletalCategory SkeletalCategory::make(CategoryData data)
{
    std::size_t n = data.names.size();
    if (n == 0) throw ValidationError("category has no simples");
    if (n > 1000) throw Unsupported("category rank above 1000");
    if (data.dual.size() != n) throw ValidationError("dual table has wrong length");
    if (data.qdim.size() != n) throw ValidationError("qdim table has wrong length");
    if (data.grading.size() != n) throw ValidationError("grading table has wrong length");
    if (!data.grading_group) throw ValidationError("missing grading group");
    if (!data.duality_coeff.empty() && data.duality_coeff.size() != n)
        throw ValidationError("duality_coeff table has wrong length");

    SkeletalCategory c;
    c.names_ = std::move(data.names);
    c.dual_ = std::move(data.dual);
    c.grading_group_ = std::move(data.grading_group);
    c.grading_ = std::move(data.grading);
    c.qdim_ = std::move(data.qdim);
    c.kappa_ = std::move(data.duality_coeff);

    for (Simple a = 0; a < n; ++a) {
        if (c.dual_[a] >= n) throw ValidationError("dual of " + c.names_[a] + " out of range");
        if (c.grading_[a] >= c.grading_group_->order())
            throw ValidationError("grading of " + c.names_[a] + " out of range");
        if (!(c.qdim_[a] > 0)) throw ValidationError("qdim of " + c.names_[a] + " must be positive");
    }

    c.fusion_.assign(n * n * n, 0);
    std::set<std::array<Simple, 3>> seen;
    for (auto const& t : data.fusion) {
        for (Simple x : t)
            if (x >= n) throw ValidationError("fusion rule refers to an unknown simple");
        if (!seen.insert(t).second)
            throw Unsupported("fusion multiplicity above 1 for " + c.names_[t[0]] + "*" + c.names_[t[1]] + "->" +
                              c.names_[t[2]]);
        c.fusion_[(t[0] * n + t[1]) * n + t[2]] = 1;
    }
    // Unit rules may be left implicit.
    for (Simple b = 0; b < n; ++b) {
        c.fusion_[(0 * n + b) * n + b] = 1;
        c.fusion_[(b * n + 0) * n + b] = 1;
    }
    for (Simple b = 0; b < n; ++b)
        for (Simple x = 0; x < n; ++x)
            if (x != b && (c.N(0, b, x) || c.N(b, 0, x)))
                throw ValidationError("unit fusion with " + c.names_[b] + " produces " + c.names_[x]);

    if (c.dual_[0] != 0) throw ValidationError("the unit must be self-dual");
    for (Simple a = 0; a < n; ++a) {
        if (c.dual_[c.dual_[a]] != a) throw ValidationError("dual is not an involution at " + c.names_[a]);
        for (Simple b = 0; b < n; ++b)
            if (c.N(a, b, 0) != (b == c.dual_[a]))
                throw ValidationError("N[" + c.names_[a] + "][" + c.names_[b] + "][unit] inconsistent with duals");
    }

    c.channels_.assign(n * n, {});
    c.pointed_ = true;
    for (Simple a = 0; a < n; ++a)
        for (Simple b = 0; b < n; ++b) {
            auto& ch = c.channels_[a * n + b];
            for (Simple x = 0; x < n; ++x)
                if (c.N(a, b, x)) ch.push_back(x);
            if (ch.empty()) throw ValidationError("empty fusion product " + c.names_[a] + "*" + c.names_[b]);
            if (ch.size() != 1) c.pointed_ = false;
        }

    for (auto const& e : data.F) {
        auto const& l = e.labels;
        for (Simple x : l)
            if (x >= n) throw ValidationError("F entry refers to an unknown simple");
        if (!c.admissible(l))
            throw ValidationError("F entry at non-admissible labels (" +
                                  label_list(c, {l[0], l[1], l[2], l[3], l[4], l[5]}) + ")");
        if (l[0] == 0 || l[1] == 0 || l[2] == 0) {
            if (std::abs(e.value - Complex(1)) > 1e-12)
                throw ValidationError("F entry with a unit label must be 1");
            continue;
        }
        if (!c.F_.emplace(key(l, n), e.value).second) throw ValidationError("duplicate F entry");
    }
    for (Simple a = 1; a < n; ++a)
        for (Simple b = 1; b < n; ++b)
            for (Simple cc = 1; cc < n; ++cc)
                for (Simple e : c.channels(a, b))
                    for (Simple d : c.channels(e, cc))
                        for (Simple f : c.channels(b, cc))
                            if (c.N(a, f, d) && !c.F_.count(key({a, b, cc, d, e, f}, n)))
                                throw ValidationError("missing F entry (" + label_list(c, {a, b, cc, d, e, f}) + ")");
    return c;
}

std::optional<Simple> SkeletalCategory::find(std::string const& name) const
{
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<Simple>(it - names_.begin());
}

bool SkeletalCategory::admissible(FLabels const& l) const
{
    auto [a, b, c, d, e, f] = l;
    return N(a, b, e) && N(e, c, d) && N(b, c, f) && N(a, f, d);
}

Complex SkeletalCategory::F(Simple a, Simple b, Simple c, Simple d, Simple e, Simple f) const
{
    if (!admissible({a, b, c, d, e, f})) return 0;
    if (a == 0 || b == 0 || c == 0) return 1;
    return F_.at(key({a, b, c, d, e, f}, rank()));
}

Phase SkeletalCategory::F_exact(FLabels const& l) const
{
    if (!exact_) throw std::logic_error("exact F requested from float data");
    if (l[0] == 0 || l[1] == 0 || l[2] == 0) return {};
    return F_exact_.at(key(l, rank()));
}

Complex SkeletalCategory::conjugate_duality_coeff(Simple s) const
{
    Simple sb = dual(s);
    return std::conj(1.0 / (kappa_[s] * F(sb, s, sb, sb, 0, 0)));
}

Phase SkeletalCategory::conjugate_duality_coeff_exact(Simple s) const
{
    Simple sb = dual(s);
    return kappa_exact_[s] * F_exact({sb, s, sb, sb, 0, 0});
}

std::vector<FEntry> SkeletalCategory::F_entries() const
{
    std::vector<FEntry> out;
    std::size_t n = rank();
    for (auto const& [k, v] : F_) {
        FLabels l{};
        std::uint64_t r = k;
        for (std::size_t i = 6; i-- > 0;) {
            l[i] = r % n;
            r /= n;
        }
        out.push_back({l, v});
    }
    std::sort(out.begin(), out.end(), [](FEntry const& x, FEntry const& y) { return x.labels < y.labels; });
    return out;
}

CategoryData SkeletalCategory::data() const
{
    CategoryData d;
    d.names = names_;
    d.dual = dual_;
    for (Simple a = 0; a < rank(); ++a)
        for (Simple b = 0; b < rank(); ++b)
            for (Simple x : channels(a, b)) d.fusion.push_back({a, b, x});
    d.grading_group = grading_group_;
    d.grading = grading_;
    d.F = F_entries();
    d.qdim = qdim_;
    d.duality_coeff = kappa_;
    return d;
}

SkeletalCategory pointed_category(GroupPtr group, GroupCochain const& omega)
{
    if (omega.degree() != 3 || !(*omega.group() == *group))
        throw ValidationError("pointed category needs a 3-cochain on its group");
    if (!omega.is_normalized()) throw ValidationError("pointed category needs a normalized 3-cochain");

    auto const& g = *group;
    std::size_t n = g.order();
    CategoryData d;
    d.names = g.labels();
    for (Element a = 0; a < n; ++a) d.dual.push_back(g.inv(a));
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b) d.fusion.push_back({a, b, g.mul(a, b)});
    d.grading_group = group;
    for (Element a = 0; a < n; ++a) d.grading.push_back(a);
    d.qdim.assign(n, 1.0);
    d.duality_coeff.assign(n, 1.0);
    for (Element a = 1; a < n; ++a)
        for (Element b = 1; b < n; ++b)
            for (Element c = 1; c < n; ++c)
                d.F.push_back({{a, b, c, g.mul(g.mul(a, b), c), g.mul(a, b), g.mul(b, c)},
                               to_complex(omega.at({a, b, c}))});

    auto cat = SkeletalCategory::make(std::move(d));
    cat.exact_ = true;
    cat.kappa_exact_.assign(n, Phase());
    for (Element a = 1; a < n; ++a)
        for (Element b = 1; b < n; ++b)
            for (Element c = 1; c < n; ++c) {
                FLabels l{a, b, c, g.mul(g.mul(a, b), c), g.mul(a, b), g.mul(b, c)};
                cat.F_exact_.emplace(SkeletalCategory::key(l, n), omega.at({a, b, c}));
            }
    return cat;
}

SkeletalCategory twist(SkeletalCategory const& c, GroupCochain const& omega)
{
    if (omega.degree() != 3 || !(*omega.group() == *c.grading_group()))
        throw ValidationError("twist: cocycle does not live on the grading group");
    if (!omega.is_normalized()) throw ValidationError("twist: cocycle is not normalized");

    SkeletalCategory out = c;
    std::size_t n = c.rank();
    for (auto& [k, v] : out.F_) {
        std::uint64_t r = k / (n * n * n);
        Simple cc = r % n, b = (r / n) % n, a = r / (n * n);
        Phase w = omega.at({c.grade(a), c.grade(b), c.grade(cc)});
        v *= to_complex(w);
        if (out.exact_) out.F_exact_.at(k) *= w;
    }
    return out;
}

PentagonReport check_pentagon(SkeletalCategory const& c, double tolerance)
{
    PentagonReport rep;
    std::size_t n = c.rank();
    auto fail = [&](double residual, std::vector<Simple> w) {
        if (rep.ok || residual > rep.residual) {
            if (rep.ok) rep.witness = std::move(w);
            rep.ok = false;
        }
    };
    for (Simple a = 0; a < n; ++a)
        for (Simple b = 0; b < n; ++b)
            for (Simple cc = 0; cc < n; ++cc)
                for (Simple d = 0; d < n; ++d)
                    for (Simple x : c.channels(a, b))
                        for (Simple y : c.channels(x, cc))
                            for (Simple e : c.channels(y, d))
                                for (Simple z : c.channels(cc, d))
                                    for (Simple w : c.channels(b, z)) {
                                        if (!c.N(a, w, e)) continue;
                                        if (c.exact()) {
                                            // one channel everywhere: v = b c, x z = e
                                            Simple v = c.channels(b, cc).front();
                                            Phase lhs = c.F_exact({x, cc, d, e, y, z}) * c.F_exact({a, b, z, e, x, w});
                                            Phase rhs = c.F_exact({a, b, cc, y, x, v}) *
                                                        c.F_exact({a, v, d, e, y, w}) *
                                                        c.F_exact({b, cc, d, w, v, z});
                                            if (lhs != rhs) {
                                                double r = std::abs(to_complex(lhs) - to_complex(rhs));
                                                fail(r, {a, b, cc, d, e, x, y, z, w});
                                                rep.residual = std::max(rep.residual, r);
                                            }
                                            continue;
                                        }
                                        Complex lhs = c.F(x, cc, d, e, y, z) * c.F(a, b, z, e, x, w);
                                        Complex rhs = 0;
                                        for (Simple v : c.channels(b, cc))
                                            rhs += c.F(a, b, cc, y, x, v) * c.F(a, v, d, e, y, w) * c.F(b, cc, d, w, v, z);
                                        double r = std::abs(lhs - rhs);
                                        if (r >= tolerance) fail(r, {a, b, cc, d, e, x, y, z, w});
                                        rep.residual = std::max(rep.residual, r);
                                    }
    return rep;
}

GradingReport check_grading(SkeletalCategory const& c)
{
    auto const& g = *c.grading_group();
    if (c.grade(c.unit()) != g.identity()) return {false, "unit is not in degree e"};
    for (Simple a = 0; a < c.rank(); ++a) {
        if (c.grade(c.dual(a)) != g.inv(c.grade(a)))
            return {false, "dual of " + c.name(a) + " is not in the inverse degree"};
        for (Simple b = 0; b < c.rank(); ++b)
            for (Simple x : c.channels(a, b))
                if (c.grade(x) != g.mul(c.grade(a), c.grade(b)))
                    return {false, c.name(a) + "*" + c.name(b) + "->" + c.name(x) + " breaks the grading"};
    }
    std::vector<char> reached(g.order(), 0);
    std::vector<Element> frontier{g.identity()};
    reached[g.identity()] = 1;
    while (!frontier.empty()) {
        Element x = frontier.back();
        frontier.pop_back();
        for (Simple a = 0; a < c.rank(); ++a) {
            Element y = g.mul(x, c.grade(a));
            if (!reached[y]) {
                reached[y] = 1;
                frontier.push_back(y);
            }
        }
    }
    for (Element x = 0; x < g.order(); ++x)
        if (!reached[x]) return {false, "support does not generate the grading group (misses " + g.label(x) + ")"};
    return {};
}

RigidityReport check_rigidity(SkeletalCategory const& c, double tolerance)
{
    RigidityReport rep;
    if (!c.has_duality()) {
        rep.status = RigidityReport::Status::unavailable;
        return rep;
    }
    for (Simple s = 0; s < c.rank(); ++s) {
        Simple sb = c.dual(s);
        double r = 0;
        if (c.exact()) {
            Phase zz = c.conjugate_duality_coeff_exact(s) * c.duality_coeff_exact(s).conj() * c.F_exact({s, sb, s, s, 0, 0});
            r = std::abs(to_complex(zz) - 1.0);
            if (!zz.is_neutral()) r = std::max(r, tolerance);
            r = std::max(r, std::abs(c.qdim(s) - 1.0));
        } else {
            Complex k = c.duality_coeff(s);
            Complex kb = c.conjugate_duality_coeff(s);
            r = std::abs(kb * std::conj(k) * c.F(s, sb, s, s, 0, 0) - 1.0);
            r = std::max(r, std::abs(std::norm(k) - c.qdim(s)));
            r = std::max(r, std::abs(std::norm(kb) - c.qdim(s)));
        }
        if (r > rep.residual) rep.residual = r;
        if (r >= tolerance && rep.ok()) {
            rep.status = RigidityReport::Status::fail;
            rep.witness = s;
        }
    }
    return rep;
}

UnitarityReport check_unitarity(SkeletalCategory const& c, double tolerance)
{
    UnitarityReport rep;
    std::size_t n = c.rank();
    for (Simple a = 0; a < n; ++a)
        for (Simple b = 0; b < n; ++b)
            for (Simple cc = 0; cc < n; ++cc)
                for (Simple d = 0; d < n; ++d) {
                    std::vector<Simple> es, fs;
                    for (Simple e : c.channels(a, b))
                        if (c.N(e, cc, d)) es.push_back(e);
                    for (Simple f : c.channels(b, cc))
                        if (c.N(a, f, d)) fs.push_back(f);
                    double r = 0;
                    if (es.size() != fs.size()) {
                        r = 1;
                    } else {
                        for (Simple e1 : es)
                            for (Simple e2 : es) {
                                Complex acc = 0;
                                for (Simple f : fs) acc += c.F(a, b, cc, d, e1, f) * std::conj(c.F(a, b, cc, d, e2, f));
                                r = std::max(r, std::abs(acc - (e1 == e2 ? 1.0 : 0.0)));
                            }
                    }
                    if (r > rep.residual) rep.residual = r;
                    if (r >= tolerance && rep.ok) {
                        rep.ok = false;
                        rep.witness = {a, b, cc, d};
                    }
                }
    return rep;
}

void validate_category(SkeletalCategory const& c, double tolerance)
{
    for (Simple a = 0; a < c.rank(); ++a) {
        if (std::abs(c.qdim(a) - c.qdim(c.dual(a))) > tolerance)
            throw ValidationError("qdim of " + c.name(a) + " differs from its dual");
        for (Simple b = 0; b < c.rank(); ++b) {
            double sum = 0;
            for (Simple x : c.channels(a, b)) sum += c.qdim(x);
            if (std::abs(sum - c.qdim(a) * c.qdim(b)) > tolerance * std::max(1.0, sum))
                throw ValidationError("qdim is not a fusion character at " + c.name(a) + "*" + c.name(b));
        }
    }
    if (std::abs(c.qdim(0) - 1.0) > tolerance) throw ValidationError("unit must have dimension 1");

    auto grading = check_grading(c);
    if (!grading.ok) throw ValidationError("grading check failed: " + grading.failure);
    auto unit = check_unitarity(c, tolerance);
    if (!unit.ok)
        throw ValidationError("F-matrix not unitary at (" +
                              label_list(c, {unit.witness[0], unit.witness[1], unit.witness[2], unit.witness[3]}) + ")");
    auto pent = check_pentagon(c, tolerance);
    if (!pent.ok) {
        std::string w;
        for (Simple x : pent.witness) w += (w.empty() ? "" : ",") + c.name(x);
        throw ValidationError("pentagon fails at (" + w + "), residual " + std::to_string(pent.residual));
    }
    auto rig = check_rigidity(c, tolerance);
    if (rig.status == RigidityReport::Status::fail)
        throw ValidationError("conjugate equations fail for " + c.name(*rig.witness) + ", residual " +
                              std::to_string(rig.residual));
}

bool same_category(SkeletalCategory const& a, SkeletalCategory const& b, double tolerance)
{
    if (a.rank() != b.rank() || !(*a.grading_group() == *b.grading_group()) || a.grading() != b.grading())
        return false;
    if (a.has_duality() != b.has_duality()) return false;
    for (Simple x = 0; x < a.rank(); ++x) {
        if (a.dual(x) != b.dual(x) || std::abs(a.qdim(x) - b.qdim(x)) > tolerance) return false;
        if (a.has_duality() && std::abs(a.duality_coeff(x) - b.duality_coeff(x)) > tolerance) return false;
        for (Simple y = 0; y < a.rank(); ++y)
            if (a.channels(x, y) != b.channels(x, y)) return false;
    }
    auto ea = a.F_entries(), eb = b.F_entries();
    if (ea.size() != eb.size()) return false;
    for (std::size_t i = 0; i < ea.size(); ++i) {
        if (ea[i].labels != eb[i].labels) return false;
        if (a.exact() && b.exact()) {
            if (a.F_exact(ea[i].labels) != b.F_exact(eb[i].labels)) return false;
        } else if (std::abs(ea[i].value - eb[i].value) > tolerance) {
            return false;
        }
    }
    return true;
}

}  // namespace tubealg
