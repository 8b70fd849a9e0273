#include "doctest.h"

#include "tubealg/phase.hpp"

#include <cmath>
#include <random>

using tubealg::Phase;

TEST_CASE("multiplication adds exponents mod 1")
{
    CHECK(Phase(1, 2) * Phase(1, 2) == Phase());
    CHECK(Phase(1, 4) * Phase(1, 2) == Phase(3, 4));
    CHECK(Phase(5, 6) * Phase(1, 3) == Phase(1, 6));
    CHECK(Phase(-1, 4) == Phase(3, 4));
    CHECK(Phase(6, 8) == Phase(3, 4));
}

TEST_CASE("inverse law on random phases")
{
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        std::int64_t den = 1 + rng() % 500;
        Phase p(static_cast<std::int64_t>(rng() % 1000) - 500, den);
        CHECK((p * p.inverse()).is_neutral());
        CHECK(p.num() >= 0);
        CHECK(p.num() < p.den());
    }
}

TEST_CASE("principal square root")
{
    CHECK(principal_sqrt(Phase(1, 2)) == Phase(1, 4));
    CHECK(principal_sqrt(Phase()) == Phase());
    CHECK(principal_sqrt(Phase(3, 4)) == Phase(3, 8));
    for (std::int64_t den = 1; den < 30; ++den)
        for (std::int64_t num = 0; num < den; ++num) {
            Phase p(num, den);
            Phase r = principal_sqrt(p);
            CHECK(r * r == p);
        }
}

TEST_CASE("complex values")
{
    auto near = [](std::complex<double> a, std::complex<double> b) { return std::abs(a - b) < 1e-15; };
    CHECK(near(to_complex(Phase()), {1, 0}));
    CHECK(near(to_complex(Phase(1, 2)), {-1, 0}));
    CHECK(near(to_complex(Phase(1, 4)), {0, 1}));
    for (std::int64_t num = 0; num < 13; ++num) {
        auto z = to_complex(Phase(num, 13));
        CHECK(std::abs(std::abs(z) - 1.0) < 1e-15);
        CHECK(near(z, std::polar(1.0, 2 * M_PI * num / 13.0)));
    }
}

TEST_CASE("string round trip")
{
    CHECK(Phase(3, 4).to_string() == "3/4");
    CHECK(Phase().to_string() == "0/1");
    CHECK(Phase::parse("3/4") == Phase(3, 4));
    CHECK(Phase::parse("-1/4") == Phase(3, 4));
    CHECK(Phase::parse("2") == Phase());
    CHECK_THROWS(Phase::parse("1/0"));
    CHECK_THROWS(Phase::parse("x"));
}
