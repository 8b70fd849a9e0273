#include "doctest.h"

#include "fixtures.hpp"
#include "tubealg/error.hpp"

#include <random>

using namespace tubealg;

namespace {

GroupCochain random_cochain(GroupPtr g, std::size_t degree, std::mt19937_64& rng, std::int64_t den = 12)
{
    return GroupCochain::from_function(g, degree, [&](std::span<Element const>) {
        return Phase(static_cast<std::int64_t>(rng() % den), den);
    });
}

std::vector<GroupPtr> small_groups()
{
    return {share(FiniteGroup::cyclic(2)), share(FiniteGroup::cyclic(4)), share(FiniteGroup::cyclic(12)),
            share(FiniteGroup::product({2, 2, 2})), fixtures::s3()};
}

}  // namespace

TEST_CASE("coboundary examples")
{
    auto z2 = share(FiniteGroup::cyclic(2));
    CHECK(coboundary(GroupCochain::constant(z2, 2)) == GroupCochain::constant(z2, 3));

    GroupCochain eta(z2, 1);
    eta.set(std::array<Element, 1>{1}, Phase(1, 4));
    auto d = coboundary(eta);
    // d eta(s,t) = eta(t) - eta(st) + eta(s) in exponents
    CHECK(d.at({1, 1}) == Phase(1, 2));
    CHECK(d.at({0, 1}) == Phase());
    CHECK(d.at({1, 0}) == Phase());
}

TEST_CASE("coboundary squares to zero")
{
    std::mt19937_64 rng(11);
    for (auto const& g : small_groups())
        for (std::size_t n : {0u, 1u, 2u}) {
            auto c = random_cochain(g, n, rng);
            auto dd = coboundary(coboundary(c));
            for (auto const& v : dd.values()) CHECK(v.is_neutral());
        }
}

TEST_CASE("cyclic generator values")
{
    auto w = cyclic_generator(2, 1);
    CHECK(w.at({1, 1, 1}) == Phase(1, 2));
    int nontrivial = 0;
    for (auto const& v : w.values()) nontrivial += !v.is_neutral();
    CHECK(nontrivial == 1);

    CHECK(cyclic_generator(4, 1).at({3, 3, 2}) == Phase(1, 2));
    auto w0 = cyclic_generator(5, 0);
    for (auto const& v : w0.values()) CHECK(v.is_neutral());

    // direct formula k floor((a+b)/n) c / n
    for (int n = 1; n <= 6; ++n)
        for (int k = 0; k < n; ++k) {
            auto c = cyclic_generator(n, k);
            CHECK(is_cocycle(c).ok);
            CHECK(c.is_normalized());
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    for (int x = 0; x < n; ++x)
                        CHECK(c.at({Element(a), Element(b), Element(x)}) == Phase(k * ((a + b) / n) * x, n));
        }
    CHECK_THROWS_AS(cyclic_generator(3, 3), InputError);
    CHECK_THROWS_AS(cyclic_generator(3, -1), InputError);
}

TEST_CASE("product generators")
{
    auto v4 = share(FiniteGroup::product({2, 2}));
    auto phi12 = product_generator_ij(v4, 0, 1);
    int e10[] = {1, 0}, e01[] = {0, 1};
    Element x10 = v4->from_coords(e10), x01 = v4->from_coords(e01);
    CHECK(phi12.at({x10, x10, x01}) == Phase(1, 2));

    auto c8 = share(FiniteGroup::product({2, 2, 2}));
    auto phi123 = product_generator_ijk(c8, 0, 1, 2);
    int a[] = {1, 0, 0}, b[] = {0, 1, 0}, c[] = {0, 0, 1};
    CHECK(phi123.at({c8->from_coords(a), c8->from_coords(b), c8->from_coords(c)}) == Phase(1, 2));
    for (std::size_t i = 0; i < phi123.size(); ++i) {
        auto t = phi123.unflatten(i);
        int parity = c8->coords(t[0])[0] * c8->coords(t[1])[1] * c8->coords(t[2])[2];
        if (parity % 2 == 0) CHECK(phi123.value(i).is_neutral());
    }

    auto mixed = share(FiniteGroup::product({2, 4, 2}));
    for (auto const& g : {product_generator_ij(mixed, 1, 2), product_generator_ij(mixed, 2, 0),
                          product_generator_ijk(mixed, 0, 1, 2), cyclic_factor_generator(mixed, 1, 3)}) {
        CHECK(is_cocycle(g).ok);
        CHECK(g.is_normalized());
    }
    CHECK_THROWS_AS(product_generator_ij(c8, 1, 1), InputError);
    CHECK_THROWS_AS(product_generator_ijk(c8, 0, 1, 3), InputError);

    CHECK(is_cocycle(product_generator_ij(c8, 0, 1) * phi123).ok);
}

TEST_CASE("broken cocycle reports a witness")
{
    auto w = cyclic_generator(4, 1);
    w.set(std::array<Element, 3>{1, 2, 3}, Phase(1, 2));
    auto check = is_cocycle(w);
    CHECK_FALSE(check.ok);
    REQUIRE(check.witness.size() == 4);
    // Oracle: the reported tuple really breaks the identity.
    auto const& x = check.witness;
    auto g = FiniteGroup::cyclic(4);
    Phase lhs = w.at({x[1], x[2], x[3]}) * w.at({g.mul(x[0], x[1]), x[2], x[3]}).conj() *
                w.at({x[0], g.mul(x[1], x[2]), x[3]}) * w.at({x[0], x[1], g.mul(x[2], x[3])}).conj() *
                w.at({x[0], x[1], x[2]});
    CHECK_FALSE(lhs.is_neutral());
    CHECK(lhs == check.value);
}

TEST_CASE("pullback")
{
    auto s3 = fixtures::s3();
    auto sign = fixtures::sign_map(s3);
    auto w = pullback(sign, cyclic_generator(2, 1));
    CHECK(is_cocycle(w).ok);
    CHECK(w.is_normalized());

    auto z4 = share(FiniteGroup::cyclic(4));
    auto w4 = cyclic_generator(4, 3);
    CHECK(pullback(GroupHom::identity(z4), w4) == w4);
    auto triv = pullback(GroupHom::trivial(s3, z4), w4);
    for (auto const& v : triv.values()) CHECK(v.is_neutral());

    std::mt19937_64 rng(3);
    auto z2 = share(FiniteGroup::cyclic(2));
    auto c = random_cochain(z2, 2, rng);
    CHECK(coboundary(pullback(sign, c)) == pullback(sign, coboundary(c)));

    CHECK_THROWS_AS(pullback(sign, w4), InputError);
}

TEST_CASE("solve_coboundary")
{
    auto z2 = share(FiniteGroup::cyclic(2));
    GroupCochain phi(z2, 2);
    phi.set(std::array<Element, 2>{1, 1}, Phase(1, 2));
    auto eta = solve_coboundary(phi);
    REQUIRE(eta);
    CHECK(coboundary(*eta) == phi);
    // 2 eta(1) = 1/2 mod 1
    CHECK(eta->at({1}).pow(2) == Phase(1, 2));

    auto neutral = solve_coboundary(GroupCochain::constant(z2, 2));
    REQUIRE(neutral);
    CHECK(coboundary(*neutral) == GroupCochain::constant(z2, 2));

    // Random coboundaries are always recovered.
    std::mt19937_64 rng(5);
    for (auto const& g : small_groups()) {
        for (std::size_t n : {1u, 2u}) {
            auto target = coboundary(random_cochain(g, n, rng, 6));
            auto sol = solve_coboundary(target);
            REQUIRE(sol);
            CHECK(coboundary(*sol) == target);
        }
    }

    // The nontrivial class on Z/2 x Z/2: exp(pi i s1 t2) is not a coboundary.
    auto v4 = share(FiniteGroup::product({2, 2}));
    auto skew = GroupCochain::from_function(v4, 2, [&](std::span<Element const> x) {
        return Phase(v4->coords(x[0])[0] * v4->coords(x[1])[1], 2);
    });
    CHECK(is_cocycle(skew).ok);
    CHECK_FALSE(solve_coboundary(skew).has_value());

    auto broken = phi;
    broken.set(std::array<Element, 2>{0, 1}, Phase(1, 3));
    CHECK_THROWS_AS(solve_coboundary(broken), ValidationError);
}

TEST_CASE("residue identity")
{
    for (int n = 1; n <= 12; ++n) CHECK(residue_identity_check(n));
}
