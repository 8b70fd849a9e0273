#pragma once

#include "tubealg/cohomology.hpp"
#include "tubealg/fusion_data.hpp"
#include "tubealg/tube_algebra.hpp"

#include "json.hpp"

#include <string>

namespace tubealg::io {

using json = nlohmann::json;

/// Parse errors become InputError naming the file.
json read_json_file(std::string const& path);

/// "num/den" string or integer.
Phase phase_from_json(json const& j, std::string const& where);
json phase_to_json(Phase p);

/// {"type":"cyclic","n":4} | {"type":"product","factors":[2,2,2]} |
/// {"type":"table","labels":[...],"table":[[...]]}
GroupPtr group_from_json(json const& j, std::string const& where = "group");
json group_to_json(FiniteGroup const& g);

/// Element given by index, label, or coordinate list.
Element element_from_json(FiniteGroup const& g, json const& j, std::string const& where);

/// Cocycle specs: cyclic (optional "factor", 1-based, on product groups),
/// product_ij / product_ijk (1-based indices), pullback {"hom":{"target":
/// group-spec,"map":[...]},"inner":spec}, pointwise_product {"factors":[...]},
/// table {"degree":3,"values":{"a,b,c":"num/den"}} (missing keys neutral).
/// `group` may be null for cyclic specs, which then live on Z/n.
GroupCochain cocycle_from_json(json const& j, GroupPtr group, std::string const& where = "cocycle");
json cochain_to_json(GroupCochain const& c);

/// {"type":"groupoid_table","degree":n,"values":{"s1,d1;s2,d2":"num/den"}},
/// arrows (s, dom) by element index; missing keys neutral.
GroupoidCochain groupoid_cochain_from_json(json const& j, ActionGroupoid const& g, std::string const& where = "psi");
json groupoid_cochain_to_json(GroupoidCochain const& c);
json equivariant_to_json(EquivariantCochain const& c);

/// {"type":"pointed","group":…,"cocycle":…} or the skeletal form. The
/// result has passed validate_category.
SkeletalCategory category_from_json(json const& j, std::string const& where = "category");
json category_to_json(SkeletalCategory const& c);

json tube_to_json(TubeAlgebra const& t);

}  // namespace tubealg::io
