#pragma once

#include "tubealg/fusion_data.hpp"
#include "tubealg/groupoid.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tubealg {

/// Basis element of C(S (x) X_j, X_k (x) S) through channel u, with
/// N_Sj^u = N_kS^u = 1. Its Fell degree is the arrow (grade S, grade j).
struct TubeBasisElement {
    Simple s = 0, j = 0, k = 0, u = 0;
    friend bool operator==(TubeBasisElement const&, TubeBasisElement const&) = default;
};

/// One term of a structure constant. In exact algebras `phase` is
/// authoritative and `value` mirrors it.
struct Term {
    std::size_t index = 0;
    Complex value;
    Phase phase;
};

using TermList = std::vector<Term>;
using Vector = std::vector<Complex>;

class TubeAlgebra {
public:
    std::size_t dim() const { return basis_.size(); }
    std::vector<TubeBasisElement> const& basis() const { return basis_; }
    TubeBasisElement const& element(std::size_t i) const { return basis_[i]; }
    std::optional<std::size_t> index_of(TubeBasisElement const& e) const;
    std::string label(std::size_t i) const;

    GroupPtr const& grading_group() const { return groupoid_.group(); }
    ActionGroupoid const& groupoid() const { return groupoid_; }
    Arrow degree(std::size_t i) const { return degrees_[i]; }
    bool exact() const { return exact_; }
    /// Built from a pointed category: one channel per basis element.
    bool pointed() const { return pointed_; }

    /// e_i . e_j, sorted by index; empty when not composable.
    TermList const& product(std::size_t i, std::size_t j) const { return product_[i * dim() + j]; }
    bool has_involution() const { return !involution_.empty(); }
    TermList const& involution(std::size_t i) const;
    Complex trace(std::size_t i) const { return trace_[i]; }

    Vector multiply(Vector const& a, Vector const& b) const;
    Vector involute(Vector const& a) const;
    Complex trace(Vector const& a) const;
    /// sum_j e(1, j -> j, j).
    Vector unit() const;
    Vector basis_vector(std::size_t i) const;

    /// Indices grouped by the conjugacy class of the source degree j, in
    /// conjugacy_classes order.
    std::vector<std::vector<std::size_t>> fell_blocks() const;

    std::vector<std::string> const& simple_names() const { return names_; }

private:
    friend TubeAlgebra build_tube(SkeletalCategory const& c);
    friend TubeAlgebra twist_fell_bundle(TubeAlgebra const& t, GroupoidCochain const& psi);

    explicit TubeAlgebra(ActionGroupoid g) : groupoid_(std::move(g)) {}

    ActionGroupoid groupoid_;
    std::vector<std::string> names_;
    std::vector<TubeBasisElement> basis_;
    std::vector<Arrow> degrees_;
    std::vector<TermList> product_;
    std::vector<TermList> involution_;
    Vector trace_;
    bool exact_ = false;
    bool pointed_ = false;
};

/// Tube algebra over Irr(C). Exact when C carries exact F. Without duality
/// data the algebra is product-only (has_involution() is false).
TubeAlgebra build_tube(SkeletalCategory const& c);

/// Products scaled by psi(g1, g2) and involution terms by conj(psi(g^-1, g)).
/// Throws ValidationError unless psi is a 2-cocycle on the algebra's groupoid.
TubeAlgebra twist_fell_bundle(TubeAlgebra const& t, GroupoidCochain const& psi);

struct TableComparison {
    bool equal = true;
    double max_discrepancy = 0;
    std::string witness;
};

/// Entrywise comparison of product and involution tables: exact phases when
/// both algebras are exact, otherwise max |difference| < tolerance.
TableComparison compare_tables(TubeAlgebra const& a, TubeAlgebra const& b, double tolerance = 1e-9);

struct TwistTheoremReport {
    bool pass = false;
    bool exact = false;
    double max_discrepancy = 0;
    std::string witness;
    std::size_t dim = 0;
};

/// build_tube(twist(C, omega)) against
/// twist_fell_bundle(build_tube(C), induce_psi(omega)).
TwistTheoremReport verify_twist_theorem(SkeletalCategory const& c, GroupCochain const& omega, double tolerance = 1e-9);

struct CornerReport {
    bool ok = true;
    std::size_t checked = 0;
    std::string witness;
};

/// For pointed algebras: e^# . e = e(e, g -> g) for every basis element e of
/// degree (s, g).
CornerReport corner_unit_check(TubeAlgebra const& t);

struct TransportReport {
    bool ok = true;
    bool used_normalized = false;  // eta solved phi'_a rather than phi_a
    std::string witness;
};

/// Rescales the isotropy block over a of `twisted` by e(s,a) -> c(s) e(s,a),
/// c = conj(eta) when coboundary(eta) = phi_a and conj(eta xi) when it equals
/// phi'_a, then checks products and involutions against `untwisted` exactly.
/// eta lives on the centralizer of a (local indices). Throws ValidationError
/// when coboundary(eta) matches neither.
TransportReport coboundary_transport(TubeAlgebra const& twisted, TubeAlgebra const& untwisted,
                                     GroupCochain const& omega, Element a, GroupCochain const& eta);

/// Laws of a finite-dimensional *-algebra with trace, checked on the basis.
struct LawReport {
    bool ok = true;
    double residual = 0;
    std::string failure;
};

LawReport check_associativity(TubeAlgebra const& t, double tolerance = 1e-9);
/// Random triples when the algebra is large.
LawReport check_associativity_sampled(TubeAlgebra const& t, std::size_t samples, unsigned seed, double tolerance = 1e-9);
LawReport check_fell_grading(TubeAlgebra const& t);
LawReport check_involution(TubeAlgebra const& t, double tolerance = 1e-9);
LawReport check_trace(TubeAlgebra const& t, double tolerance = 1e-9);
/// <a, b> = tau(a . b^#): Hermitian, positive definite, distinct S orthogonal.
LawReport check_gram(TubeAlgebra const& t, double tolerance = 1e-9);

}  // namespace tubealg
