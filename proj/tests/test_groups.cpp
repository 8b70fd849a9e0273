#include "doctest.h"

#include "fixtures.hpp"
#include "tubealg/error.hpp"

#include <algorithm>
#include <set>

using namespace tubealg;

namespace {

void check_axioms(FiniteGroup const& g)
{
    for (Element x = 0; x < g.order(); ++x) {
        CHECK(g.mul(x, g.inv(x)) == g.identity());
        CHECK(g.mul(g.identity(), x) == x);
        for (Element y = 0; y < g.order(); ++y)
            for (Element z = 0; z < g.order(); ++z) CHECK(g.mul(g.mul(x, y), z) == g.mul(x, g.mul(y, z)));
    }
}

// Orbit of a under conjugation, by brute-force scan.
std::set<Element> orbit(FiniteGroup const& g, Element a)
{
    std::set<Element> out;
    for (Element s = 0; s < g.order(); ++s) out.insert(g.mul(g.mul(s, a), g.inv(s)));
    return out;
}

}  // namespace

TEST_CASE("cyclic and product groups")
{
    auto one = FiniteGroup::cyclic(1);
    CHECK(one.order() == 1);
    CHECK(one.identity() == 0);

    auto c8 = FiniteGroup::product({2, 2, 2});
    CHECK(c8.order() == 8);
    std::set<std::vector<int>> triples;
    for (Element x = 0; x < 8; ++x) {
        auto c = c8.coords(x);
        triples.insert({c.begin(), c.end()});
    }
    CHECK(triples.size() == 8);
    for (Element x = 0; x < 8; ++x)
        for (Element y = 0; y < 8; ++y)
            for (int i = 0; i < 3; ++i) CHECK(c8.coords(c8.mul(x, y))[i] == (c8.coords(x)[i] + c8.coords(y)[i]) % 2);

    for (int n : {1, 2, 5, 12}) check_axioms(FiniteGroup::cyclic(n));
    check_axioms(FiniteGroup::product({2, 3, 4}));
}

TEST_CASE("Cayley table validation")
{
    auto s3 = fixtures::s3();
    CHECK(s3->order() == 6);
    CHECK_FALSE(s3->is_abelian());
    check_axioms(*s3);

    std::vector<std::vector<Element>> bad = {{0, 1, 2}, {1, 2, 0}, {2, 1, 0}};
    CHECK_THROWS_AS(FiniteGroup::from_table(bad), ValidationError);

    // Identity placed at index 2 is moved to index 0.
    std::vector<std::vector<Element>> shifted = {{1, 2, 0}, {2, 0, 1}, {0, 1, 2}};
    auto g = FiniteGroup::from_table(shifted, {"a", "b", "e"});
    CHECK(g.label(0) == "e");
    check_axioms(g);
}

TEST_CASE("conjugacy classes")
{
    auto c8 = FiniteGroup::product({2, 2, 2});
    CHECK(conjugacy_classes(c8).size() == 8);
    CHECK(conjugacy_classes(FiniteGroup::cyclic(4)).size() == 4);

    auto s3 = fixtures::s3();
    auto classes = conjugacy_classes(*s3);
    std::vector<std::size_t> sizes;
    for (auto const& c : classes) sizes.push_back(c.size());
    CHECK(sizes == std::vector<std::size_t>{1, 3, 2});
    for (auto const& c : classes) {
        auto o = orbit(*s3, c.front());
        CHECK(std::set<Element>(c.begin(), c.end()) == o);
        CHECK(s3->order() % c.size() == 0);
    }
}

TEST_CASE("centralizers")
{
    auto s3 = fixtures::s3();
    CHECK(centralizer(*s3, 0).size() == 6);
    CHECK(centralizer(*s3, 1).size() == 2);
    CHECK(centralizer(*s3, 4).size() == 3);
    auto z6 = FiniteGroup::cyclic(6);
    CHECK(centralizer(z6, 3).size() == 6);

    for (Element a = 0; a < s3->order(); ++a) {
        auto c = centralizer(*s3, a);
        CHECK(c.size() * orbit(*s3, a).size() == s3->order());
        auto sub = make_subgroup(*s3, c);
        CHECK(sub.group->order() == c.size());
        check_axioms(*sub.group);
        CHECK(sub.local(a).has_value());
    }
}

TEST_CASE("homomorphisms")
{
    auto s3 = fixtures::s3();
    auto z2 = share(FiniteGroup::cyclic(2));
    auto sign = fixtures::sign_map(s3);
    CHECK(sign(1) == 1);
    CHECK_THROWS_AS(GroupHom::make(s3, z2, {0, 1, 0, 0, 0, 0}), ValidationError);
    auto id = GroupHom::identity(s3);
    for (Element x = 0; x < 6; ++x) CHECK(id(x) == x);
}
