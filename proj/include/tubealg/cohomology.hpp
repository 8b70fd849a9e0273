#pragma once

#include "tubealg/group.hpp"
#include "tubealg/groupoid.hpp"
#include "tubealg/phase.hpp"

#include <initializer_list>
#include <optional>
#include <span>
#include <type_traits>
#include <vector>

namespace tubealg {

/// T-valued n-cochain on a finite group, trivial action, stored densely over
/// G^n with the last argument varying fastest.
class GroupCochain {
public:
    GroupCochain(GroupPtr group, std::size_t degree);

    static GroupCochain constant(GroupPtr group, std::size_t degree, Phase value = {});
    template <class Fn>
    static GroupCochain from_function(GroupPtr group, std::size_t degree, Fn&& fn);

    GroupPtr const& group() const { return group_; }
    std::size_t degree() const { return degree_; }
    std::size_t size() const { return values_.size(); }

    Phase operator()(std::span<Element const> args) const { return values_[flat(args)]; }
    Phase at(std::initializer_list<Element> args) const { return (*this)(std::span(args.begin(), args.size())); }
    void set(std::span<Element const> args, Phase v) { values_[flat(args)] = v; }

    Phase const& value(std::size_t flat_index) const { return values_[flat_index]; }
    Phase& value(std::size_t flat_index) { return values_[flat_index]; }
    std::vector<Phase> const& values() const { return values_; }
    std::vector<Element> unflatten(std::size_t flat_index) const;

    /// Neutral whenever some argument is the identity.
    bool is_normalized() const;
    GroupCochain conj() const;

    GroupCochain& operator*=(GroupCochain const& other);
    friend GroupCochain operator*(GroupCochain a, GroupCochain const& b) { return a *= b; }
    friend bool operator==(GroupCochain const& a, GroupCochain const& b)
    {
        return a.degree_ == b.degree_ && *a.group_ == *b.group_ && a.values_ == b.values_;
    }

private:
    std::size_t flat(std::span<Element const> args) const;

    GroupPtr group_;
    std::size_t degree_;
    std::vector<Phase> values_;
};

template <class Fn>
GroupCochain GroupCochain::from_function(GroupPtr group, std::size_t degree, Fn&& fn)
{
    GroupCochain c(std::move(group), degree);
    for (std::size_t i = 0; i < c.size(); ++i) {
        auto args = c.unflatten(i);
        c.values_[i] = fn(std::span<Element const>(args));
    }
    return c;
}

/// T-valued n-cochain on the adjoint action groupoid, stored densely over
/// composable n-tuples (indexed by ActionGroupoid::tuple_index). Degree 0
/// cochains are functions on objects.
class GroupoidCochain {
public:
    GroupoidCochain(ActionGroupoid groupoid, std::size_t degree);

    template <class Fn>
    static GroupoidCochain from_function(ActionGroupoid groupoid, std::size_t degree, Fn&& fn);

    ActionGroupoid const& groupoid() const { return groupoid_; }
    std::size_t degree() const { return degree_; }
    std::size_t size() const { return values_.size(); }

    Phase operator()(std::span<Arrow const> args) const { return values_[groupoid_.tuple_index(args)]; }
    Phase at(std::initializer_list<Arrow> args) const { return (*this)(std::span(args.begin(), args.size())); }
    Phase on_object(Element x) const { return values_[x]; }
    void set(std::span<Arrow const> args, Phase v) { values_[groupoid_.tuple_index(args)] = v; }
    void set_on_object(Element x, Phase v) { values_[x] = v; }

    std::vector<Phase> const& values() const { return values_; }
    std::vector<Phase>& values() { return values_; }

    /// Neutral whenever some argument is a unit arrow.
    bool is_normalized() const;
    GroupoidCochain conj() const;

    GroupoidCochain& operator*=(GroupoidCochain const& other);
    friend GroupoidCochain operator*(GroupoidCochain a, GroupoidCochain const& b) { return a *= b; }
    friend bool operator==(GroupoidCochain const&, GroupoidCochain const&) = default;

private:
    ActionGroupoid groupoid_;
    std::size_t degree_;
    std::vector<Phase> values_;
};

template <class Fn>
GroupoidCochain GroupoidCochain::from_function(ActionGroupoid groupoid, std::size_t degree, Fn&& fn)
{
    GroupoidCochain c(std::move(groupoid), degree);
    if (degree == 0) {
        if constexpr (std::is_invocable_v<Fn&, Element>)
            for (Element x = 0; x < c.groupoid_.num_objects(); ++x) c.values_[x] = fn(x);
    } else if constexpr (std::is_invocable_v<Fn&, std::span<Arrow const>>) {
        c.groupoid_.for_each_composable(degree, [&](std::span<Arrow const> t) {
            c.values_[c.groupoid_.tuple_index(t)] = fn(t);
        });
    }
    return c;
}

/// Equivariant form Xi[g_1, ..., g_n](x) of a groupoid cochain: a group
/// cochain with values in Map(G, T), G acting by (g f)(x) = f(g^-1 x g).
/// Stored over G^n x G with x last.
class EquivariantCochain {
public:
    EquivariantCochain(GroupPtr group, std::size_t degree);

    GroupPtr const& group() const { return group_; }
    std::size_t degree() const { return degree_; }

    Phase operator()(std::span<Element const> args, Element x) const { return values_[flat(args, x)]; }
    Phase at(std::initializer_list<Element> args, Element x) const
    {
        return (*this)(std::span(args.begin(), args.size()), x);
    }
    void set(std::span<Element const> args, Element x, Phase v) { values_[flat(args, x)] = v; }

    std::vector<Phase> const& values() const { return values_; }
    std::vector<Phase>& values() { return values_; }
    std::vector<Element> unflatten(std::size_t flat_index) const;

    friend bool operator==(EquivariantCochain const& a, EquivariantCochain const& b)
    {
        return a.degree_ == b.degree_ && *a.group_ == *b.group_ && a.values_ == b.values_;
    }

private:
    std::size_t flat(std::span<Element const> args, Element x) const;

    GroupPtr group_;
    std::size_t degree_;
    std::vector<Phase> values_;
};

/// Result of a cocycle test: when !ok, witness holds the first tuple (as flat
/// indices into the (n+1)-cochain domain) where the coboundary is not neutral.
struct CocycleCheck {
    bool ok = true;
    std::vector<std::size_t> witness;
    Phase value;
};

GroupCochain coboundary(GroupCochain const& c);
GroupoidCochain groupoid_coboundary(GroupoidCochain const& c);
EquivariantCochain equivariant_coboundary(EquivariantCochain const& c);

/// Witness is the group-element tuple.
CocycleCheck is_cocycle(GroupCochain const& c);
/// Witness is the arrow tuple, flattened as s_1, dom_1, s_2, dom_2, ...
CocycleCheck is_cocycle(GroupoidCochain const& c);
/// Witness is (g_1, ..., g_{n+1}, x).
CocycleCheck is_cocycle(EquivariantCochain const& c);

/// omega^k(a,b,c) = exp(2 pi i k floor((a+b)/n) c / n) on Z/n, 0 <= k < n.
GroupCochain cyclic_generator(int n, int k);
/// The same formula applied to coordinate `factor` of a product group.
GroupCochain cyclic_factor_generator(GroupPtr group, std::size_t factor, int k = 1);
/// phi_ij(a,b,c) = exp(2 pi i floor((a_i+b_i)/n_i) c_j / n_j), i != j.
GroupCochain product_generator_ij(GroupPtr group, std::size_t i, std::size_t j);
/// phi_ijk(a,b,c) = exp(2 pi i a_i b_j c_k / gcd(n_i, n_j, n_k)), distinct.
GroupCochain product_generator_ijk(GroupPtr group, std::size_t i, std::size_t j, std::size_t k);

/// (h^* c)(x_1..x_n) = c(h(x_1)..h(x_n)).
GroupCochain pullback(GroupHom const& h, GroupCochain const& c);

/// Finds eta of degree n-1 with coboundary(eta) == target, solving the
/// exponent system over Z/D for D = lcm(denominators) * exp(G), then 2D.
/// Returns nullopt when no solution exists at those denominators.
/// Throws ValidationError if target is not a cocycle.
std::optional<GroupCochain> solve_coboundary(GroupCochain const& target);

EquivariantCochain to_equivariant(GroupoidCochain const& c);
GroupoidCochain from_equivariant(EquivariantCochain const& c);

/// r(s) + r(t) - r(s+t) == n (floor((s+t)/n) - floor(s/n) - floor(t/n)) for
/// all -2n <= s, t < 2n, r the least non-negative residue.
bool residue_identity_check(int n);

}  // namespace tubealg
