#include "tubealg/tube_algebra.hpp"

#include "tubealg/action_groupoid.hpp"
#include "tubealg/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

namespace tubealg {

namespace {

constexpr double zero_threshold = 1e-12;

using SparseVec = std::map<std::size_t, Complex>;

void sort_terms(TermList& t)
{
    std::sort(t.begin(), t.end(), [](Term const& a, Term const& b) { return a.index < b.index; });
}

SparseVec to_sparse(TermList const& t)
{
    SparseVec out;
    for (auto const& term : t) out[term.index] += term.value;
    return out;
}

// (sum a_i e_i)(sum b_j e_j) using the stored table.
SparseVec sparse_mul(TubeAlgebra const& t, SparseVec const& a, SparseVec const& b)
{
    SparseVec out;
    for (auto const& [i, x] : a)
        for (auto const& [j, y] : b)
            for (auto const& term : t.product(i, j)) out[term.index] += x * y * term.value;
    return out;
}

SparseVec sparse_inv(TubeAlgebra const& t, SparseVec const& a)
{
    SparseVec out;
    for (auto const& [i, x] : a)
        for (auto const& term : t.involution(i)) out[term.index] += std::conj(x) * term.value;
    return out;
}

double sparse_distance(SparseVec const& a, SparseVec const& b)
{
    double r = 0;
    for (auto const& [i, x] : a) {
        auto it = b.find(i);
        r = std::max(r, std::abs(x - (it == b.end() ? Complex(0) : it->second)));
    }
    for (auto const& [i, y] : b)
        if (!a.count(i)) r = std::max(r, std::abs(y));
    return r;
}

std::uint64_t basis_key(TubeBasisElement const& e, std::size_t rank)
{
    return ((e.s * rank + e.j) * rank + e.k) * rank + e.u;
}

}  // namespace

std::optional<std::size_t> TubeAlgebra::index_of(TubeBasisElement const& e) const
{
    for (std::size_t i = 0; i < basis_.size(); ++i)
        if (basis_[i] == e) return i;
    return std::nullopt;
}

std::string TubeAlgebra::label(std::size_t i) const
{
    auto const& e = basis_[i];
    if (pointed_) return "e(" + names_[e.s] + "," + names_[e.j] + ")";
    return "e(" + names_[e.s] + ";" + names_[e.j] + "->" + names_[e.k] + ";" + names_[e.u] + ")";
}

TermList const& TubeAlgebra::involution(std::size_t i) const
{
    if (involution_.empty()) throw Unsupported("involution unavailable: category has no duality data");
    return involution_[i];
}

Vector TubeAlgebra::multiply(Vector const& a, Vector const& b) const
{
    if (a.size() != dim() || b.size() != dim()) throw InputError("vector dimension does not match the algebra");
    Vector out(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
        if (a[i] == Complex(0)) continue;
        for (std::size_t j = 0; j < dim(); ++j) {
            if (b[j] == Complex(0)) continue;
            for (auto const& term : product(i, j)) out[term.index] += a[i] * b[j] * term.value;
        }
    }
    return out;
}

Vector TubeAlgebra::involute(Vector const& a) const
{
    if (a.size() != dim()) throw InputError("vector dimension does not match the algebra");
    Vector out(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
        if (a[i] == Complex(0)) continue;
        for (auto const& term : involution(i)) out[term.index] += std::conj(a[i]) * term.value;
    }
    return out;
}

Complex TubeAlgebra::trace(Vector const& a) const
{
    if (a.size() != dim()) throw InputError("vector dimension does not match the algebra");
    Complex acc = 0;
    for (std::size_t i = 0; i < dim(); ++i) acc += a[i] * trace_[i];
    return acc;
}

Vector TubeAlgebra::unit() const
{
    Vector out(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
        auto const& e = basis_[i];
        if (e.s == 0 && e.j == e.k && e.u == e.j) out[i] = 1;
    }
    return out;
}

Vector TubeAlgebra::basis_vector(std::size_t i) const
{
    Vector out(dim());
    out.at(i) = 1;
    return out;
}

std::vector<std::vector<std::size_t>> TubeAlgebra::fell_blocks() const
{
    auto const& g = *grading_group();
    auto cls = class_index(g);
    std::vector<std::vector<std::size_t>> out(conjugacy_classes(g).size());
    for (std::size_t i = 0; i < dim(); ++i) out[cls[degrees_[i].dom]].push_back(i);
    return out;
}

TubeAlgebra build_tube(SkeletalCategory const& c)
{
    TubeAlgebra t{ActionGroupoid(c.grading_group())};
    t.names_ = c.names();
    t.exact_ = c.exact();
    t.pointed_ = c.is_pointed();
    std::size_t n = c.rank();

    std::vector<std::vector<std::size_t>> by_target(n);
    std::unordered_map<std::uint64_t, std::size_t> lookup;
    for (Simple s = 0; s < n; ++s)
        for (Simple j = 0; j < n; ++j)
            for (Simple u : c.channels(s, j))
                for (Simple k = 0; k < n; ++k)
                    if (c.N(k, s, u)) {
                        TubeBasisElement e{s, j, k, u};
                        lookup[basis_key(e, n)] = t.basis_.size();
                        by_target[k].push_back(t.basis_.size());
                        t.basis_.push_back(e);
                        t.degrees_.push_back({c.grade(s), c.grade(j)});
                    }
    std::size_t dim = t.basis_.size();
    auto at = [&](TubeBasisElement const& e) { return lookup.at(basis_key(e, n)); };

    // e(S, k->m, u1) . e(T, j->k, u2)
    //   = sum_{U, x} F^{STj}_x[U,u2] conj(F^{SkT}_x[u1,u2]) F^{mST}_x[u1,U] e(U, j->m, x)
    t.product_.assign(dim * dim, {});
    for (std::size_t a = 0; a < dim; ++a) {
        auto [S, k, m, u1] = t.basis_[a];
        for (std::size_t b : by_target[k]) {
            auto [T, j, k2, u2] = t.basis_[b];
            auto& out = t.product_[a * dim + b];
            for (Simple U : c.channels(S, T))
                for (Simple x : c.channels(U, j)) {
                    if (!c.N(m, U, x)) continue;
                    std::size_t r = at({U, j, m, x});
                    if (t.exact_) {
                        Phase p = c.F_exact({S, T, j, x, U, u2}) * c.F_exact({S, k, T, x, u1, u2}).conj() *
                                  c.F_exact({m, S, T, x, u1, U});
                        out.push_back({r, to_complex(p), p});
                    } else {
                        Complex v = c.F(S, T, j, x, U, u2) * std::conj(c.F(S, k, T, x, u1, u2)) * c.F(m, S, T, x, u1, U);
                        if (std::abs(v) > zero_threshold) out.push_back({r, v, {}});
                    }
                }
            sort_terms(out);
        }
    }

    t.trace_.assign(dim, 0);
    for (std::size_t a = 0; a < dim; ++a) {
        auto const& e = t.basis_[a];
        if (e.s == 0 && e.j == e.k && e.u == e.j) t.trace_[a] = c.qdim(e.j);
    }

    if (!c.has_duality()) return t;

    // e(S, j->k, u)^# = sum_y kappa'_S conj(kappa_S) conj(F^{kSS'}_k[u,1])
    //                   conj(F^{S'uS'}_y[j,k]) conj(F^{S'Sj}_j[1,u]) e(S', k->j, y)
    t.involution_.assign(dim, {});
    for (std::size_t a = 0; a < dim; ++a) {
        auto [S, j, k, u] = t.basis_[a];
        Simple Sb = c.dual(S);
        auto& out = t.involution_[a];
        for (Simple y : c.channels(Sb, k)) {
            if (!c.N(j, Sb, y)) continue;
            std::size_t r = at({Sb, k, j, y});
            if (t.exact_) {
                Phase p = c.conjugate_duality_coeff_exact(S) * c.duality_coeff_exact(S).conj() *
                          c.F_exact({k, S, Sb, k, u, 0}).conj() * c.F_exact({Sb, u, Sb, y, j, k}).conj() *
                          c.F_exact({Sb, S, j, j, 0, u}).conj();
                out.push_back({r, to_complex(p), p});
            } else {
                Complex v = c.conjugate_duality_coeff(S) * std::conj(c.duality_coeff(S)) *
                            std::conj(c.F(k, S, Sb, k, u, 0)) * std::conj(c.F(Sb, u, Sb, y, j, k)) *
                            std::conj(c.F(Sb, S, j, j, 0, u));
                if (std::abs(v) > zero_threshold) out.push_back({r, v, {}});
            }
        }
        sort_terms(out);
    }
    return t;
}

TubeAlgebra twist_fell_bundle(TubeAlgebra const& t, GroupoidCochain const& psi)
{
    if (psi.degree() != 2 || !(psi.groupoid() == t.groupoid()))
        throw ValidationError("twist_fell_bundle: psi must be a 2-cochain on the algebra's groupoid");
    auto check = is_cocycle(psi);
    if (!check.ok) throw ValidationError("twist_fell_bundle: psi is not a 2-cocycle");

    TubeAlgebra out = t;
    auto const& G = t.groupoid();
    auto scale = [&](Term& term, Phase f) {
        if (out.exact_) {
            term.phase *= f;
            term.value = to_complex(term.phase);
        } else {
            term.value *= to_complex(f);
        }
    };
    std::size_t dim = t.dim();
    for (std::size_t a = 0; a < dim; ++a)
        for (std::size_t b = 0; b < dim; ++b) {
            auto& terms = out.product_[a * dim + b];
            if (terms.empty()) continue;
            Phase f = psi.at({t.degree(a), t.degree(b)});
            for (auto& term : terms) scale(term, f);
        }
    for (std::size_t a = 0; a < out.involution_.size(); ++a) {
        Arrow g = t.degree(a);
        Phase f = psi.at({G.inverse(g), g}).conj();
        for (auto& term : out.involution_[a]) scale(term, f);
    }
    return out;
}

TableComparison compare_tables(TubeAlgebra const& a, TubeAlgebra const& b, double tolerance)
{
    TableComparison rep;
    if (a.basis() != b.basis()) return {false, INFINITY, "bases differ"};
    bool exact = a.exact() && b.exact();
    auto compare = [&](TermList const& x, TermList const& y, std::string const& where) {
        double d = 0;
        bool same = true;
        if (exact) {
            same = x.size() == y.size();
            for (std::size_t i = 0; same && i < x.size(); ++i)
                same = x[i].index == y[i].index && x[i].phase == y[i].phase;
            if (!same) d = std::max(sparse_distance(to_sparse(x), to_sparse(y)), 1e-300);
        } else {
            d = sparse_distance(to_sparse(x), to_sparse(y));
            same = d < tolerance;
        }
        rep.max_discrepancy = std::max(rep.max_discrepancy, d);
        if (!same && rep.equal) {
            rep.equal = false;
            rep.witness = where;
        }
    };
    std::size_t dim = a.dim();
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            compare(a.product(i, j), b.product(i, j), "product " + a.label(i) + " * " + a.label(j));
    if (a.has_involution() != b.has_involution()) {
        rep.equal = false;
        if (rep.witness.empty()) rep.witness = "involution available in only one algebra";
        return rep;
    }
    if (a.has_involution())
        for (std::size_t i = 0; i < dim; ++i) compare(a.involution(i), b.involution(i), "involution of " + a.label(i));
    return rep;
}

TwistTheoremReport verify_twist_theorem(SkeletalCategory const& c, GroupCochain const& omega, double tolerance)
{
    auto direct = build_tube(twist(c, omega));
    auto twisted = twist_fell_bundle(build_tube(c), induce_psi(omega));
    auto cmp = compare_tables(direct, twisted, tolerance);
    TwistTheoremReport rep;
    rep.pass = cmp.equal;
    rep.exact = direct.exact() && twisted.exact();
    rep.max_discrepancy = cmp.max_discrepancy;
    rep.witness = cmp.witness;
    rep.dim = direct.dim();
    return rep;
}

CornerReport corner_unit_check(TubeAlgebra const& t)
{
    if (!t.pointed()) throw InputError("corner_unit_check needs an algebra built from a pointed category");
    CornerReport rep;
    for (std::size_t i = 0; i < t.dim(); ++i) {
        auto const& e = t.element(i);
        auto target = t.index_of({0, e.j, e.j, e.j});
        bool ok = target.has_value();
        if (ok && t.exact()) {
            auto const& inv = t.involution(i);
            ok = inv.size() == 1;
            if (ok) {
                auto const& prod = t.product(inv[0].index, i);
                ok = prod.size() == 1 && prod[0].index == *target && (inv[0].phase * prod[0].phase).is_neutral();
            }
        } else if (ok) {
            auto v = t.multiply(t.involute(t.basis_vector(i)), t.basis_vector(i));
            auto expected = t.basis_vector(*target);
            for (std::size_t r = 0; r < t.dim(); ++r) ok = ok && std::abs(v[r] - expected[r]) < 1e-12;
        }
        ++rep.checked;
        if (!ok && rep.ok) {
            rep.ok = false;
            rep.witness = t.label(i);
        }
    }
    return rep;
}

TransportReport coboundary_transport(TubeAlgebra const& twisted, TubeAlgebra const& untwisted,
                                     GroupCochain const& omega, Element a, GroupCochain const& eta)
{
    if (!twisted.pointed() || !untwisted.pointed() || !twisted.exact() || !untwisted.exact())
        throw InputError("coboundary_transport needs exact algebras of pointed categories");
    auto phi = centralizer_cocycle(omega, a);
    auto phi_prime = normalized_centralizer_cocycle(omega, a);
    auto const& sub = phi.centralizer;
    if (eta.degree() != 1 || !(*eta.group() == *sub.group))
        throw ValidationError("eta must be a 1-cochain on the centralizer of a");

    TransportReport rep;
    auto d = coboundary(eta);
    std::vector<Phase> c(sub.group->order());
    if (d == phi_prime.phi) {
        rep.used_normalized = true;
        auto xi = normalize_psi(induce_psi(omega)).xi;
        for (Element s = 0; s < c.size(); ++s) c[s] = (eta.at({s}) * xi.at({Arrow{sub.embedding[s], a}})).conj();
    } else if (d == phi.phi) {
        for (Element s = 0; s < c.size(); ++s) c[s] = eta.at({s}).conj();
    } else {
        throw ValidationError("coboundary of eta is neither phi_a nor phi'_a");
    }

    auto const& g = *twisted.grading_group();
    std::vector<std::size_t> idx(c.size());
    for (Element s = 0; s < c.size(); ++s) {
        Element p = sub.embedding[s];
        auto i = twisted.index_of({p, a, a, g.mul(p, a)});
        if (!i) throw std::logic_error("pointed tube basis is missing an isotropy element");
        idx[s] = *i;
    }
    auto fail = [&](std::string w) {
        if (rep.ok) rep.witness = std::move(w);
        rep.ok = false;
    };
    auto single = [](TermList const& t) { return t.size() == 1; };
    auto const& h = *sub.group;
    for (Element s = 0; s < c.size(); ++s) {
        for (Element t = 0; t < c.size(); ++t) {
            auto const& tw = twisted.product(idx[s], idx[t]);
            auto const& un = untwisted.product(idx[s], idx[t]);
            Element st = h.mul(s, t);
            if (!single(tw) || !single(un) || tw[0].index != idx[st] || un[0].index != idx[st]) {
                fail("product support at " + twisted.label(idx[s]) + " * " + twisted.label(idx[t]));
                continue;
            }
            if (c[s] * c[t] * tw[0].phase / c[st] != un[0].phase)
                fail("product " + twisted.label(idx[s]) + " * " + twisted.label(idx[t]));
        }
        if (twisted.has_involution() && untwisted.has_involution()) {
            auto const& tw = twisted.involution(idx[s]);
            auto const& un = untwisted.involution(idx[s]);
            Element si = h.inv(s);
            if (!single(tw) || !single(un) || tw[0].index != idx[si] || un[0].index != idx[si]) {
                fail("involution support at " + twisted.label(idx[s]));
                continue;
            }
            if (c[s].conj() * tw[0].phase / c[si] != un[0].phase) fail("involution of " + twisted.label(idx[s]));
        }
    }
    return rep;
}

LawReport check_associativity(TubeAlgebra const& t, double tolerance)
{
    LawReport rep;
    std::size_t dim = t.dim();
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            auto const& ij = t.product(i, j);
            for (std::size_t k = 0; k < dim; ++k) {
                auto const& jk = t.product(j, k);
                if (ij.empty() && jk.empty()) continue;
                double r = 0;
                bool same = true;
                if (t.exact() && ij.size() <= 1 && jk.size() <= 1) {
                    TermList left, right;
                    if (!ij.empty())
                        for (auto const& x : t.product(ij[0].index, k)) left.push_back({x.index, {}, ij[0].phase * x.phase});
                    if (!jk.empty())
                        for (auto const& x : t.product(i, jk[0].index)) right.push_back({x.index, {}, jk[0].phase * x.phase});
                    same = left.size() == right.size() &&
                           (left.empty() || (left[0].index == right[0].index && left[0].phase == right[0].phase));
                    if (!same) r = 1;
                } else {
                    SparseVec left, right;
                    for (auto const& x : ij)
                        for (auto const& y : t.product(x.index, k)) left[y.index] += x.value * y.value;
                    for (auto const& x : jk)
                        for (auto const& y : t.product(i, x.index)) right[y.index] += x.value * y.value;
                    r = sparse_distance(left, right);
                    same = r < tolerance;
                }
                rep.residual = std::max(rep.residual, r);
                if (!same && rep.ok) {
                    rep.ok = false;
                    rep.failure = "(" + t.label(i) + " " + t.label(j) + ") " + t.label(k);
                }
            }
        }
    return rep;
}

LawReport check_associativity_sampled(TubeAlgebra const& t, std::size_t samples, unsigned seed, double tolerance)
{
    LawReport rep;
    std::mt19937 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, t.dim() - 1);
    std::normal_distribution<double> normal;
    auto random_vec = [&] {
        SparseVec v;
        for (std::size_t i = 0; i < t.dim(); ++i) v[i] = {normal(rng), normal(rng)};
        return v;
    };
    for (std::size_t n = 0; n < samples; ++n) {
        // half basis triples, half dense random elements
        SparseVec a, b, c;
        if (n % 2 == 0) {
            a[pick(rng)] = 1;
            b[pick(rng)] = 1;
            c[pick(rng)] = 1;
        } else {
            a = random_vec();
            b = random_vec();
            c = random_vec();
        }
        double r = sparse_distance(sparse_mul(t, sparse_mul(t, a, b), c), sparse_mul(t, a, sparse_mul(t, b, c)));
        rep.residual = std::max(rep.residual, r);
        if (r >= tolerance && rep.ok) {
            rep.ok = false;
            rep.failure = "sample " + std::to_string(n);
        }
    }
    return rep;
}

LawReport check_fell_grading(TubeAlgebra const& t)
{
    LawReport rep;
    auto const& G = t.groupoid();
    auto fail = [&](std::string w) {
        if (rep.ok) rep.failure = std::move(w);
        rep.ok = false;
    };
    for (std::size_t i = 0; i < t.dim(); ++i) {
        for (std::size_t j = 0; j < t.dim(); ++j) {
            auto const& terms = t.product(i, j);
            if (terms.empty()) continue;
            if (!G.composable(t.degree(i), t.degree(j))) {
                fail("nonzero product of non-composable " + t.label(i) + " * " + t.label(j));
                continue;
            }
            Arrow g = G.compose(t.degree(i), t.degree(j));
            for (auto const& term : terms)
                if (!(t.degree(term.index) == g)) fail("product " + t.label(i) + " * " + t.label(j) + " leaves its degree");
        }
        if (t.has_involution())
            for (auto const& term : t.involution(i))
                if (!(t.degree(term.index) == G.inverse(t.degree(i)))) fail("involution of " + t.label(i) + " not in inverse degree");
    }
    return rep;
}

LawReport check_involution(TubeAlgebra const& t, double tolerance)
{
    LawReport rep;
    auto note = [&](double r, std::string w) {
        rep.residual = std::max(rep.residual, r);
        if (r >= tolerance && rep.ok) {
            rep.ok = false;
            rep.failure = std::move(w);
        }
    };
    std::size_t dim = t.dim();
    for (std::size_t i = 0; i < dim; ++i) {
        SparseVec e{{i, 1}};
        note(sparse_distance(sparse_inv(t, sparse_inv(t, e)), e), "involutivity at " + t.label(i));
    }
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            SparseVec ei{{i, 1}}, ej{{j, 1}};
            auto left = sparse_inv(t, to_sparse(t.product(i, j)));
            auto right = sparse_mul(t, sparse_inv(t, ej), sparse_inv(t, ei));
            note(sparse_distance(left, right), "antimultiplicativity at " + t.label(i) + ", " + t.label(j));
        }
    return rep;
}

LawReport check_trace(TubeAlgebra const& t, double tolerance)
{
    LawReport rep;
    auto tau = [&](TermList const& x) {
        Complex acc = 0;
        for (auto const& term : x) acc += term.value * t.trace(term.index);
        return acc;
    };
    for (std::size_t i = 0; i < t.dim(); ++i)
        for (std::size_t j = 0; j < t.dim(); ++j) {
            double r = std::abs(tau(t.product(i, j)) - tau(t.product(j, i)));
            rep.residual = std::max(rep.residual, r);
            if (r >= tolerance && rep.ok) {
                rep.ok = false;
                rep.failure = "traciality at " + t.label(i) + ", " + t.label(j);
            }
        }
    return rep;
}

LawReport check_gram(TubeAlgebra const& t, double tolerance)
{
    LawReport rep;
    std::size_t dim = t.dim();
    Eigen::MatrixXcd gram(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            SparseVec ei{{i, 1}};
            auto prod = sparse_mul(t, ei, sparse_inv(t, SparseVec{{j, 1}}));
            Complex acc = 0;
            for (auto const& [k, v] : prod) acc += v * t.trace(k);
            gram(i, j) = acc;
        }
    auto fail = [&](std::string w) {
        if (rep.ok) rep.failure = std::move(w);
        rep.ok = false;
    };
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            double h = std::abs(gram(i, j) - std::conj(gram(j, i)));
            rep.residual = std::max(rep.residual, h);
            if (h >= tolerance) fail("Gram matrix not Hermitian at " + t.label(i) + ", " + t.label(j));
            if (t.element(i).s != t.element(j).s && std::abs(gram(i, j)) >= tolerance)
                fail("sectors not orthogonal at " + t.label(i) + ", " + t.label(j));
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram);
    double min_eig = eig.eigenvalues().minCoeff();
    if (!(min_eig > tolerance)) {
        std::ostringstream os;
        os << "Gram matrix not positive definite (min eigenvalue " << min_eig << ")";
        fail(os.str());
    }
    return rep;
}

}  // namespace tubealg
