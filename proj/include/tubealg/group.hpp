#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tubealg {

/// Dense element index 0..|G|-1. The identity is always index 0.
using Element = std::size_t;

/// A finite group given by its multiplication table.
///
/// Groups built from cyclic factors carry coordinates: element x has
/// coords(x)[i] in [0, factor(i)) and multiplication is componentwise
/// addition mod factor(i). Tables supplied by the user are validated for
/// closure, associativity, identity and inverses at construction.
class FiniteGroup {
public:
    static FiniteGroup cyclic(int n);
    static FiniteGroup product(std::vector<int> factors);

    /// Validates the table and relabels so that the identity is index 0.
    /// Throws ValidationError naming the first failing triple or element.
    static FiniteGroup from_table(std::vector<std::vector<Element>> table,
                                  std::vector<std::string> labels = {});

    std::size_t order() const { return order_; }
    Element identity() const { return 0; }
    Element mul(Element a, Element b) const { return mul_[a * order_ + b]; }
    Element inv(Element a) const { return inv_[a]; }
    /// s * g * s^-1
    Element conj(Element s, Element g) const { return mul(mul(s, g), inv(s)); }

    bool is_abelian() const;
    /// Least common multiple of element orders.
    std::size_t exponent() const;
    std::size_t element_order(Element a) const;

    std::string label(Element a) const;
    std::vector<std::string> labels() const;

    bool has_coords() const { return !factors_.empty(); }
    std::vector<int> const& factors() const { return factors_; }
    std::span<int const> coords(Element a) const;
    Element from_coords(std::span<int const> c) const;

    std::vector<std::vector<Element>> table() const;

    friend bool operator==(FiniteGroup const& a, FiniteGroup const& b)
    {
        return a.order_ == b.order_ && a.mul_ == b.mul_;
    }

private:
    FiniteGroup() = default;
    void fill_inverses();

    std::size_t order_ = 0;
    std::vector<Element> mul_;
    std::vector<Element> inv_;
    std::vector<std::string> labels_;
    std::vector<int> factors_;
    std::vector<int> coords_;  // order_ * factors_.size(), row-major
};

using GroupPtr = std::shared_ptr<FiniteGroup const>;

inline GroupPtr share(FiniteGroup g) { return std::make_shared<FiniteGroup const>(std::move(g)); }

/// A validated homomorphism source -> target.
struct GroupHom {
    GroupPtr source;
    GroupPtr target;
    std::vector<Element> map;

    static GroupHom make(GroupPtr source, GroupPtr target, std::vector<Element> map);
    static GroupHom identity(GroupPtr g);
    static GroupHom trivial(GroupPtr source, GroupPtr target);

    Element operator()(Element x) const { return map[x]; }
};

/// Conjugacy classes ordered by least element; each class sorted.
std::vector<std::vector<Element>> conjugacy_classes(FiniteGroup const& g);

/// Index into conjugacy_classes(g) for every element.
std::vector<std::size_t> class_index(FiniteGroup const& g);

/// {x : a x = x a}, sorted.
std::vector<Element> centralizer(FiniteGroup const& g, Element a);

/// A subgroup realized as a standalone group. embedding[i] is the element of
/// the parent that local index i represents; local index 0 is the identity.
struct Subgroup {
    GroupPtr group;
    std::vector<Element> embedding;

    /// Local index of a parent element, if it lies in the subgroup.
    std::optional<Element> local(Element parent) const;
};

/// Throws ValidationError if elements is not closed under mul and inv.
Subgroup make_subgroup(FiniteGroup const& g, std::vector<Element> elements);

}  // namespace tubealg
