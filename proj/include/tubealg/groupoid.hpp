#pragma once

#include "tubealg/group.hpp"

#include <functional>
#include <span>
#include <vector>

namespace tubealg {

/// Arrow (s, dom) of the adjoint action groupoid: dom -> s dom s^-1.
struct Arrow {
    Element s = 0;
    Element dom = 0;
    friend bool operator==(Arrow const&, Arrow const&) = default;
};

/// The action groupoid of a finite group acting on itself by conjugation.
/// Arrows are enumerated lexicographically in (s, dom).
class ActionGroupoid {
public:
    explicit ActionGroupoid(GroupPtr group);

    GroupPtr const& group() const { return group_; }
    std::size_t num_objects() const { return n_; }
    std::size_t num_arrows() const { return n_ * n_; }

    std::size_t index(Arrow g) const { return g.s * n_ + g.dom; }
    Arrow arrow(std::size_t index) const { return {index / n_, index % n_}; }

    Element dom(Arrow g) const { return g.dom; }
    Element codom(Arrow g) const { return group_->conj(g.s, g.dom); }
    bool composable(Arrow a, Arrow b) const { return dom(a) == codom(b); }
    /// a . b, defined when dom(a) == codom(b).
    Arrow compose(Arrow a, Arrow b) const;
    Arrow inverse(Arrow g) const { return {group_->inv(g.s), codom(g)}; }
    Arrow unit(Element object) const { return {group_->identity(), object}; }
    bool is_unit(Arrow g) const { return g.s == group_->identity(); }

    /// Visits every composable n-tuple (n >= 1) in lexicographic order of
    /// (s_1, ..., s_n, dom g_n). There are |G|^(n+1) of them.
    void for_each_composable(std::size_t n, std::function<void(std::span<Arrow const>)> const& fn) const;
    std::vector<std::vector<Arrow>> composable_tuples(std::size_t n) const;

    /// Dense index of a composable tuple, matching the visiting order above.
    std::size_t tuple_index(std::span<Arrow const> tuple) const;

    friend bool operator==(ActionGroupoid const& a, ActionGroupoid const& b) { return *a.group_ == *b.group_; }

private:
    GroupPtr group_;
    std::size_t n_;
};

}  // namespace tubealg
