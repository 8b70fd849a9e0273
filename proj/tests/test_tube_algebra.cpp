#include "doctest.h"

#include "fixtures.hpp"
#include "tubealg/action_groupoid.hpp"
#include "tubealg/error.hpp"
#include "tubealg/tube_algebra.hpp"

#include <cmath>

using namespace tubealg;

namespace {

// Independent count: one basis vector per (s, j, u in s*j, k with u in k*s).
std::size_t count_basis(SkeletalCategory const& c)
{
    std::size_t n = c.rank(), total = 0;
    for (Simple s = 0; s < n; ++s)
        for (Simple j = 0; j < n; ++j)
            for (Simple u = 0; u < n; ++u)
                for (Simple k = 0; k < n; ++k) total += c.N(s, j, u) && c.N(k, s, u);
    return total;
}

std::size_t index_of_arrow(TubeAlgebra const& t, Arrow g)
{
    for (std::size_t i = 0; i < t.dim(); ++i)
        if (t.degree(i) == g) return i;
    FAIL("arrow not in basis");
    return 0;
}

// psi(g1, g2) for g1 = (s1, x1), g2 = (s2, x2), written out from omega directly.
Phase psi_oracle(FiniteGroup const& G, GroupCochain const& w, Arrow g1, Arrow g2)
{
    Element codom1 = G.mul(G.mul(g1.s, g1.dom), G.inv(g1.s));
    return w.at({codom1, g1.s, g2.s}) * w.at({g1.s, g1.dom, g2.s}).conj() * w.at({g1.s, g2.s, g2.dom});
}

void check_laws(TubeAlgebra const& t)
{
    auto a = check_associativity(t);
    CHECK_MESSAGE(a.ok, a.failure);
    auto f = check_fell_grading(t);
    CHECK_MESSAGE(f.ok, f.failure);
    auto i = check_involution(t);
    CHECK_MESSAGE(i.ok, i.failure);
    auto tr = check_trace(t);
    CHECK_MESSAGE(tr.ok, tr.failure);
    auto g = check_gram(t);
    CHECK_MESSAGE(g.ok, g.failure);
}

}  // namespace

TEST_CASE("basis dimensions")
{
    auto ising = fixtures::load_category("categories/ising.json");
    auto fib = fixtures::load_category("categories/fibonacci.json");
    CHECK(build_tube(ising).dim() == 12);
    CHECK(build_tube(fib).dim() == 7);
    CHECK(count_basis(ising) == 12);
    CHECK(count_basis(fib) == 7);

    auto z2 = share(FiniteGroup::cyclic(2));
    CHECK(build_tube(pointed_category(z2, GroupCochain::constant(z2, 3))).dim() == 4);
    auto s3 = fixtures::s3();
    auto t = build_tube(pointed_category(s3, GroupCochain::constant(s3, 3)));
    CHECK(t.dim() == 36);
    std::vector<std::size_t> sizes;
    for (auto const& b : t.fell_blocks()) sizes.push_back(b.size());
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<std::size_t>{6, 12, 18});
}

TEST_CASE("Z/2 with the nontrivial cocycle")
{
    auto z2 = share(FiniteGroup::cyclic(2));
    auto t = build_tube(pointed_category(z2, cyclic_generator(2, 1)));
    REQUIRE(t.exact());
    auto e11 = index_of_arrow(t, {1, 1});
    auto e01 = index_of_arrow(t, {0, 1});
    auto const& p = t.product(e11, e11);
    REQUIRE(p.size() == 1);
    CHECK(p[0].index == e01);
    CHECK(p[0].phase == Phase(1, 2));
    auto const& inv = t.involution(e11);
    REQUIRE(inv.size() == 1);
    CHECK(inv[0].index == e11);
    CHECK(inv[0].phase == Phase(1, 2));
    // the untwisted sector is a plain group algebra
    auto e10 = index_of_arrow(t, {1, 0});
    CHECK(t.product(e10, e10)[0].phase.is_neutral());
    CHECK(t.involution(e10)[0].phase.is_neutral());
    check_laws(t);
}

TEST_CASE("pointed products match the induced groupoid cocycle")
{
    for (auto const& c : fixtures::cocycle_matrix()) {
        auto const& G = *c.omega.group();
        if (G.order() > 8) continue;
        INFO(c.name);
        auto t = build_tube(pointed_category(c.omega.group(), c.omega));
        REQUIRE(t.dim() == G.order() * G.order());
        bool all = true;
        for (std::size_t i = 0; i < t.dim() && all; ++i)
            for (std::size_t j = 0; j < t.dim() && all; ++j) {
                Arrow g1 = t.degree(i), g2 = t.degree(j);
                auto const& p = t.product(i, j);
                if (G.mul(G.mul(g2.s, g2.dom), G.inv(g2.s)) != g1.dom) {
                    all = p.empty();
                    continue;
                }
                all = p.size() == 1 && t.degree(p[0].index) == Arrow{G.mul(g1.s, g2.s), g2.dom} &&
                      p[0].phase == psi_oracle(G, c.omega, g1, g2);
            }
        CHECK(all);
        for (std::size_t i = 0; i < t.dim(); ++i) CHECK(std::abs(t.trace(i) - Complex(t.element(i).s == 0)) < 1e-15);
        auto corner = corner_unit_check(t);
        CHECK_MESSAGE(corner.ok, corner.witness);
        CHECK(corner.checked == t.dim());
    }
}

TEST_CASE("laws on shipped categories")
{
    for (auto name : {"categories/ising.json", "categories/fibonacci.json", "categories/pointed_s3.json",
                      "categories/pointed_z2cubed_phi123.json"}) {
        INFO(name);
        auto t = build_tube(fixtures::load_category(name));
        check_laws(t);
        auto s = check_associativity_sampled(t, 200, 7);
        CHECK(s.ok);
    }
    auto fib = build_tube(fixtures::load_category("categories/fibonacci.json"));
    CHECK(std::abs(fib.trace(*fib.index_of({0, 1, 1, 1})) - (1 + std::sqrt(5.0)) / 2) < 1e-12);
    CHECK_THROWS_AS(corner_unit_check(fib), InputError);
}

TEST_CASE("broken F-symbols break associativity")
{
    auto d = fixtures::load_category("categories/fibonacci.json").data();
    for (auto& e : d.F)
        if (e.labels == FLabels{1, 1, 1, 1, 1, 1}) e.value = -e.value;
    auto t = build_tube(SkeletalCategory::make(d));
    CHECK_FALSE(check_associativity(t).ok);
}

TEST_CASE("twist theorem")
{
    for (auto const& c : fixtures::cocycle_matrix()) {
        if (c.omega.group()->order() > 8) continue;
        INFO(c.name);
        auto G = c.omega.group();
        auto rep = verify_twist_theorem(pointed_category(G, GroupCochain::constant(G, 3)), c.omega);
        CHECK_MESSAGE(rep.pass, rep.witness);
        CHECK(rep.exact);
        CHECK(rep.max_discrepancy == 0);
    }
    auto ising = fixtures::load_category("categories/ising.json");
    auto rep = verify_twist_theorem(ising, cyclic_generator(2, 1));
    CHECK_MESSAGE(rep.pass, rep.witness);
    CHECK(rep.dim == 12);
    CHECK(rep.max_discrepancy < 1e-12);

    // a wrong psi gives a different table
    auto z2 = share(FiniteGroup::cyclic(2));
    auto untwisted = build_tube(pointed_category(z2, GroupCochain::constant(z2, 3)));
    auto direct = build_tube(pointed_category(z2, cyclic_generator(2, 1)));
    auto flat = twist_fell_bundle(untwisted, GroupoidCochain(ActionGroupoid(z2), 2));
    CHECK_FALSE(compare_tables(direct, flat).equal);
    CHECK(compare_tables(direct, twist_fell_bundle(untwisted, induce_psi(cyclic_generator(2, 1)))).equal);

    auto bad = induce_psi(cyclic_generator(2, 1));
    bad.set(std::array<Arrow, 2>{Arrow{1, 1}, Arrow{0, 1}}, Phase(1, 4));
    CHECK_THROWS_AS(twist_fell_bundle(untwisted, bad), ValidationError);
}

TEST_CASE("coboundary transport on cyclic groups")
{
    for (int n = 2; n <= 6; ++n)
        for (int k = 0; k < n; ++k) {
            auto w = cyclic_generator(n, k);
            auto G = w.group();
            auto twisted = build_tube(pointed_category(G, w));
            auto untwisted = build_tube(pointed_category(G, GroupCochain::constant(G, 3)));
            for (Element a = 0; a < G->order(); ++a) {
                INFO("n=" << n << " k=" << k << " a=" << a);
                auto phi = centralizer_cocycle(w, a).phi;
                auto eta = solve_coboundary(phi);
                REQUIRE(eta.has_value());
                CHECK(coboundary_transport(twisted, untwisted, w, a, *eta).ok);
                // a character times eta has the same coboundary and still transports
                auto chi = GroupCochain::from_function(eta->group(), 1, [&](std::span<Element const> x) {
                    return Phase(static_cast<std::int64_t>(x[0]), static_cast<std::int64_t>(eta->group()->order()));
                });
                if (eta->group()->order() == static_cast<std::size_t>(n)) CHECK(coboundary_transport(twisted, untwisted, w, a, *eta * chi).ok);
                auto wrong = *eta;
                wrong.value(1) *= Phase(1, 7);
                CHECK_THROWS_AS(coboundary_transport(twisted, untwisted, w, a, wrong), ValidationError);
            }
        }
}
