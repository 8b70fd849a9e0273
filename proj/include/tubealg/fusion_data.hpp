#pragma once

#include "tubealg/cohomology.hpp"
#include "tubealg/group.hpp"
#include "tubealg/phase.hpp"

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace tubealg {

using Simple = std::size_t;
using Complex = std::complex<double>;

/// Labels (a, b, c, d, e, f) of F^{abc}_d[e, f]: e in a(x)b, e(x)c -> d on the
/// left tree, f in b(x)c, a(x)f -> d on the right tree.
using FLabels = std::array<Simple, 6>;

struct FEntry {
    FLabels labels;
    Complex value;
};

/// Raw skeletal data before validation.
struct CategoryData {
    std::vector<std::string> names;           // index 0 is the unit
    std::vector<Simple> dual;
    std::vector<std::array<Simple, 3>> fusion;  // (a, b, c) with N_ab^c = 1
    GroupPtr grading_group;
    std::vector<Element> grading;
    std::vector<FEntry> F;  // every admissible entry with a, b, c all non-unit
    std::vector<double> qdim;
    std::vector<Complex> duality_coeff;  // empty: involution unavailable
};

/// A multiplicity-free, group-graded fusion category in skeletal form.
///
/// F is stored for admissible labels with non-unit a, b, c; entries with a
/// unit among a, b, c are identities. Pointed categories additionally carry
/// exact Phase-valued F.
class SkeletalCategory {
public:
    /// Structural validation only (unit, duals, fusion, grading shape, F
    /// completeness). Numerical checks are run by validate_category.
    static SkeletalCategory make(CategoryData data);

    std::size_t rank() const { return names_.size(); }
    Simple unit() const { return 0; }
    std::string const& name(Simple a) const { return names_[a]; }
    std::vector<std::string> const& names() const { return names_; }
    std::optional<Simple> find(std::string const& name) const;

    Simple dual(Simple a) const { return dual_[a]; }
    bool N(Simple a, Simple b, Simple c) const { return fusion_[(a * rank() + b) * rank() + c]; }
    /// c with N_ab^c = 1, ascending.
    std::vector<Simple> const& channels(Simple a, Simple b) const { return channels_[a * rank() + b]; }
    bool is_pointed() const { return pointed_; }

    GroupPtr const& grading_group() const { return grading_group_; }
    Element grade(Simple a) const { return grading_[a]; }
    std::vector<Element> const& grading() const { return grading_; }

    bool admissible(FLabels const& l) const;
    /// Zero when not admissible.
    Complex F(Simple a, Simple b, Simple c, Simple d, Simple e, Simple f) const;
    Complex F(FLabels const& l) const { return F(l[0], l[1], l[2], l[3], l[4], l[5]); }
    bool exact() const { return exact_; }
    /// Requires exact(); labels must be admissible.
    Phase F_exact(FLabels const& l) const;

    double qdim(Simple a) const { return qdim_[a]; }
    bool has_duality() const { return !kappa_.empty(); }
    /// R_S = kappa_S * (basis cup of S-bar (x) S).
    Complex duality_coeff(Simple a) const { return kappa_[a]; }
    /// R-bar_S coefficient forced by the first conjugate equation.
    Complex conjugate_duality_coeff(Simple a) const;
    Phase duality_coeff_exact(Simple a) const { return kappa_exact_[a]; }
    Phase conjugate_duality_coeff_exact(Simple a) const;

    /// All stored (non-unit) entries.
    std::vector<FEntry> F_entries() const;
    CategoryData data() const;

private:
    friend SkeletalCategory pointed_category(GroupPtr group, GroupCochain const& omega);
    friend SkeletalCategory twist(SkeletalCategory const& c, GroupCochain const& omega);

    SkeletalCategory() = default;
    static std::uint64_t key(FLabels const& l, std::size_t rank);

    std::vector<std::string> names_;
    std::vector<Simple> dual_;
    std::vector<char> fusion_;
    std::vector<std::vector<Simple>> channels_;
    bool pointed_ = false;
    GroupPtr grading_group_;
    std::vector<Element> grading_;
    std::unordered_map<std::uint64_t, Complex> F_;
    std::unordered_map<std::uint64_t, Phase> F_exact_;
    bool exact_ = false;
    std::vector<double> qdim_;
    std::vector<Complex> kappa_;
    std::vector<Phase> kappa_exact_;
};

/// C_Gamma^omega: simples are the group elements, F^{abc} = omega(a,b,c).
/// Throws ValidationError unless omega is a normalized 3-cocycle.
SkeletalCategory pointed_category(GroupPtr group, GroupCochain const& omega);

/// F^omega = omega(grade a, grade b, grade c) F; duality_coeff unchanged, so
/// R' = R and the derived R-bar' picks up omega(g^-1, g, g^-1).
SkeletalCategory twist(SkeletalCategory const& c, GroupCochain const& omega);

struct PentagonReport {
    bool ok = true;
    double residual = 0;
    std::vector<Simple> witness;  // a, b, c, d, e, x, y, z, w
};

/// F^{xcd}_e[y,z] F^{abz}_e[x,w] = sum_v F^{abc}_y[x,v] F^{avd}_e[y,w] F^{bcd}_w[v,z].
/// Exact comparison for exact data, otherwise residual < tolerance.
PentagonReport check_pentagon(SkeletalCategory const& c, double tolerance = 1e-9);

struct GradingReport {
    bool ok = true;
    std::string failure;
};

/// Fusion respects the grading, the unit has degree e, duals have inverse
/// degrees, and the support generates the grading group.
GradingReport check_grading(SkeletalCategory const& c);

struct RigidityReport {
    enum class Status { pass, fail, unavailable };
    Status status = Status::pass;
    double residual = 0;
    std::optional<Simple> witness;
    bool ok() const { return status == Status::pass; }
};

/// Checks both conjugate equations in the tree basis: the first fixes
/// kappa', the second reads kappa' conj(kappa) F^{S S-bar S}_S[1,1] = 1, and
/// standardness |kappa|^2 = |kappa'|^2 = d(S).
RigidityReport check_rigidity(SkeletalCategory const& c, double tolerance = 1e-9);

struct UnitarityReport {
    bool ok = true;
    double residual = 0;
    std::array<Simple, 4> witness{};  // a, b, c, d
};

UnitarityReport check_unitarity(SkeletalCategory const& c, double tolerance = 1e-9);

/// Runs every checker (plus dimension consistency); throws ValidationError
/// with the first failure. Missing duality data is not an error.
void validate_category(SkeletalCategory const& c, double tolerance = 1e-9);

/// Tablewise equality of F (within tolerance) and of all discrete data.
bool same_category(SkeletalCategory const& a, SkeletalCategory const& b, double tolerance = 1e-12);

}  // namespace tubealg
