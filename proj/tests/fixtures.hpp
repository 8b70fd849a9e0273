#pragma once

#include "tubealg/cohomology.hpp"
#include "tubealg/group.hpp"

#include <array>
#include <vector>

namespace fixtures {

using namespace tubealg;

// S3 as permutations of {0,1,2}; index 0 is the identity.
inline GroupPtr s3()
{
    std::vector<std::array<int, 3>> perms = {{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
    auto index = [&](std::array<int, 3> p) {
        for (std::size_t i = 0; i < perms.size(); ++i)
            if (perms[i] == p) return i;
        return std::size_t(-1);
    };
    std::vector<std::vector<Element>> table(6, std::vector<Element>(6));
    for (std::size_t a = 0; a < 6; ++a)
        for (std::size_t b = 0; b < 6; ++b) {
            std::array<int, 3> c{};
            for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
            table[a][b] = index(c);
        }
    return share(FiniteGroup::from_table(table, {"e", "(01)", "(12)", "(02)", "(012)", "(021)"}));
}

inline GroupHom sign_map(GroupPtr const& s3group)
{
    auto z2 = share(FiniteGroup::cyclic(2));
    return GroupHom::make(s3group, z2, {0, 1, 1, 1, 0, 0});
}

struct Case {
    const char* name;
    GroupCochain omega;
};

// The group/cocycle matrix shared by several suites.
inline std::vector<Case> cocycle_matrix()
{
    std::vector<Case> out;
    for (int n : {2, 3, 4, 6}) {
        auto g = share(FiniteGroup::cyclic(n));
        for (int k = 0; k < n; ++k) out.push_back({"cyclic", cyclic_factor_generator(g, 0, k)});
    }
    auto v4 = share(FiniteGroup::product({2, 2}));
    out.push_back({"z2xz2 w1", cyclic_factor_generator(v4, 0)});
    out.push_back({"z2xz2 w2", cyclic_factor_generator(v4, 1)});
    out.push_back({"z2xz2 phi12", product_generator_ij(v4, 0, 1)});
    out.push_back({"z2xz2 phi21", product_generator_ij(v4, 1, 0)});
    auto c8 = share(FiniteGroup::product({2, 2, 2}));
    out.push_back({"z2^3 phi123", product_generator_ijk(c8, 0, 1, 2)});
    out.push_back({"z2^3 phi12", product_generator_ij(c8, 0, 1)});
    out.push_back({"z2^3 w3", cyclic_factor_generator(c8, 2)});
    out.push_back({"z2^3 phi12*phi123", product_generator_ij(c8, 0, 1) * product_generator_ijk(c8, 0, 1, 2)});
    auto s = s3();
    out.push_back({"s3 neutral", GroupCochain::constant(s, 3)});
    out.push_back({"s3 sign pullback", pullback(sign_map(s), cyclic_generator(2, 1))});
    return out;
}

}  // namespace fixtures

#include "tubealg/io.hpp"

#include <cstdlib>
#include <string>

namespace fixtures {

inline std::string data_path(std::string const& rel)
{
    char const* root = std::getenv("TUBEALG_DATA");
    return std::string(root ? root : TUBEALG_DATA_DIR) + "/" + rel;
}

inline tubealg::SkeletalCategory load_category(std::string const& rel)
{
    return tubealg::io::category_from_json(tubealg::io::read_json_file(data_path(rel)));
}

}  // namespace fixtures
