#include "tubealg/groupoid.hpp"

#include "tubealg/error.hpp"

namespace tubealg {

ActionGroupoid::ActionGroupoid(GroupPtr group) : group_(std::move(group)), n_(group_->order()) {}

Arrow ActionGroupoid::compose(Arrow a, Arrow b) const
{
    if (!composable(a, b)) throw InputError("arrows are not composable");
    return {group_->mul(a.s, b.s), b.dom};
}

void ActionGroupoid::for_each_composable(std::size_t n,
                                         std::function<void(std::span<Arrow const>)> const& fn) const
{
    if (n == 0) throw InputError("composable tuples need n >= 1");
    std::vector<Element> s(n, 0);
    std::vector<Arrow> tuple(n);
    while (true) {
        for (Element last = 0; last < n_; ++last) {
            // Walk from the innermost arrow outwards: dom(g_i) = codom(g_{i+1}).
            Element d = last;
            for (std::size_t i = n; i-- > 0;) {
                tuple[i] = {s[i], d};
                d = codom(tuple[i]);
            }
            fn(tuple);
        }
        std::size_t pos = n;
        while (pos > 0) {
            --pos;
            if (++s[pos] < n_) break;
            s[pos] = 0;
            if (pos == 0) return;
        }
    }
}

std::vector<std::vector<Arrow>> ActionGroupoid::composable_tuples(std::size_t n) const
{
    std::vector<std::vector<Arrow>> out;
    for_each_composable(n, [&](std::span<Arrow const> t) { out.emplace_back(t.begin(), t.end()); });
    return out;
}

std::size_t ActionGroupoid::tuple_index(std::span<Arrow const> tuple) const
{
    if (tuple.empty()) throw InputError("empty tuple has no arrow index");
    std::size_t idx = 0;
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (i + 1 < tuple.size() && !composable(tuple[i], tuple[i + 1]))
            throw InputError("tuple is not composable at position " + std::to_string(i));
        idx = idx * n_ + tuple[i].s;
    }
    return idx * n_ + tuple.back().dom;
}

}  // namespace tubealg
