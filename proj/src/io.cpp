#include "tubealg/io.hpp"

#include "tubealg/error.hpp"

#include <fstream>
#include <sstream>

namespace tubealg::io {

namespace {

json const& field(json const& j, char const* key, std::string const& where)
{
    if (!j.is_object()) throw InputError(where + ": expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw InputError(where + "." + key + ": missing field");
    return *it;
}

std::int64_t integer(json const& j, std::string const& where)
{
    if (!j.is_number_integer()) throw InputError(where + ": expected an integer");
    return j.get<std::int64_t>();
}

std::string string_field(json const& j, char const* key, std::string const& where)
{
    auto const& v = field(j, key, where);
    if (!v.is_string()) throw InputError(where + "." + key + ": expected a string");
    return v.get<std::string>();
}

double number(json const& j, std::string const& where)
{
    if (!j.is_number()) throw InputError(where + ": expected a number");
    return j.get<double>();
}

Complex complex_from_json(json const& j, std::string const& where)
{
    if (j.is_number()) return j.get<double>();
    if (j.is_object()) return {number(field(j, "re", where), where + ".re"), number(field(j, "im", where), where + ".im")};
    throw InputError(where + ": expected a number or {re, im}");
}

std::vector<std::size_t> split_indices(std::string const& key, char sep, std::string const& where)
{
    std::vector<std::size_t> out;
    std::stringstream ss(key);
    std::string part;
    while (std::getline(ss, part, sep)) {
        try {
            std::size_t pos = 0;
            long long v = std::stoll(part, &pos);
            if (pos != part.size() || v < 0) throw std::invalid_argument("bad");
            out.push_back(static_cast<std::size_t>(v));
        } catch (std::exception const&) {
            throw InputError(where + ": bad index '" + part + "' in key '" + key + "'");
        }
    }
    return out;
}

std::size_t one_based(json const& j, std::size_t count, std::string const& where)
{
    auto v = integer(j, where);
    if (v < 1 || static_cast<std::size_t>(v) > count)
        throw InputError(where + ": index " + std::to_string(v) + " outside 1.." + std::to_string(count));
    return static_cast<std::size_t>(v - 1);
}

Simple simple_from_json(std::vector<std::string> const& names, json const& j, std::string const& where)
{
    if (j.is_number_integer()) {
        auto v = j.get<std::int64_t>();
        if (v < 0 || static_cast<std::size_t>(v) >= names.size()) throw InputError(where + ": simple index out of range");
        return static_cast<Simple>(v);
    }
    if (j.is_string()) {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == j.get<std::string>()) return i;
        throw InputError(where + ": unknown simple '" + j.get<std::string>() + "'");
    }
    throw InputError(where + ": expected a simple name or index");
}

json complex_to_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

}  // namespace

json read_json_file(std::string const& path)
{
    std::ifstream in(path);
    if (!in) throw InputError(path + ": cannot open file");
    try {
        return json::parse(in);
    } catch (json::parse_error const& e) {
        throw InputError(path + ": " + e.what());
    }
}

Phase phase_from_json(json const& j, std::string const& where)
{
    try {
        if (j.is_number_integer()) return Phase(j.get<std::int64_t>(), 1);
        if (j.is_string()) return Phase::parse(j.get<std::string>());
    } catch (InputError const& e) {
        throw InputError(where + ": " + e.what());
    }
    throw InputError(where + ": expected a phase \"num/den\"");
}

json phase_to_json(Phase p) { return p.to_string(); }

GroupPtr group_from_json(json const& j, std::string const& where)
{
    auto type = string_field(j, "type", where);
    if (type == "cyclic") {
        auto n = integer(field(j, "n", where), where + ".n");
        if (n < 1) throw InputError(where + ".n: must be >= 1");
        return share(FiniteGroup::cyclic(static_cast<int>(n)));
    }
    if (type == "product") {
        auto const& f = field(j, "factors", where);
        if (!f.is_array() || f.empty()) throw InputError(where + ".factors: expected a non-empty array");
        std::vector<int> factors;
        for (std::size_t i = 0; i < f.size(); ++i) {
            auto n = integer(f[i], where + ".factors[" + std::to_string(i) + "]");
            if (n < 1) throw InputError(where + ".factors: entries must be >= 1");
            factors.push_back(static_cast<int>(n));
        }
        return share(FiniteGroup::product(factors));
    }
    if (type == "table") {
        auto const& t = field(j, "table", where);
        if (!t.is_array()) throw InputError(where + ".table: expected an array of rows");
        std::vector<std::vector<Element>> table;
        for (std::size_t r = 0; r < t.size(); ++r) {
            if (!t[r].is_array()) throw InputError(where + ".table[" + std::to_string(r) + "]: expected an array");
            std::vector<Element> row;
            for (std::size_t c = 0; c < t[r].size(); ++c) {
                auto v = integer(t[r][c], where + ".table[" + std::to_string(r) + "][" + std::to_string(c) + "]");
                if (v < 0) throw InputError(where + ".table: entries must be non-negative");
                row.push_back(static_cast<Element>(v));
            }
            table.push_back(std::move(row));
        }
        std::vector<std::string> labels;
        if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
        return share(FiniteGroup::from_table(std::move(table), std::move(labels)));
    }
    throw InputError(where + ".type: unknown group type '" + type + "'");
}

json group_to_json(FiniteGroup const& g)
{
    if (g.has_coords()) {
        if (g.factors().size() == 1) return {{"type", "cyclic"}, {"n", g.factors()[0]}};
        return {{"type", "product"}, {"factors", g.factors()}};
    }
    return {{"type", "table"}, {"labels", g.labels()}, {"table", g.table()}};
}

Element element_from_json(FiniteGroup const& g, json const& j, std::string const& where)
{
    if (j.is_number_integer()) {
        auto v = j.get<std::int64_t>();
        if (v < 0 || static_cast<std::size_t>(v) >= g.order()) throw InputError(where + ": element index out of range");
        return static_cast<Element>(v);
    }
    if (j.is_string()) {
        auto labels = g.labels();
        for (Element a = 0; a < g.order(); ++a)
            if (labels[a] == j.get<std::string>()) return a;
        throw InputError(where + ": unknown element '" + j.get<std::string>() + "'");
    }
    if (j.is_array()) {
        if (!g.has_coords()) throw InputError(where + ": coordinates given for a group without coordinates");
        std::vector<int> c;
        for (auto const& x : j) c.push_back(static_cast<int>(integer(x, where)));
        if (c.size() != g.factors().size()) throw InputError(where + ": coordinate tuple has wrong length");
        for (std::size_t i = 0; i < c.size(); ++i) {
            int n = g.factors()[i];
            c[i] = ((c[i] % n) + n) % n;
        }
        return g.from_coords(c);
    }
    throw InputError(where + ": expected an element index, label or coordinates");
}

GroupCochain cocycle_from_json(json const& j, GroupPtr group, std::string const& where)
{
    auto type = string_field(j, "type", where);
    auto need_group = [&] {
        if (!group) throw InputError(where + ": a '" + type + "' cocycle needs a group (--group)");
    };
    if (type == "cyclic") {
        auto k = integer(field(j, "k", where), where + ".k");
        if (!group) {
            auto n = integer(field(j, "n", where), where + ".n");
            if (n < 1) throw InputError(where + ".n: must be >= 1");
            group = share(FiniteGroup::cyclic(static_cast<int>(n)));
        }
        if (!group->has_coords()) throw InputError(where + ": cyclic cocycle needs a group with cyclic coordinates");
        std::size_t factor = 0;
        if (j.contains("factor")) factor = one_based(j.at("factor"), group->factors().size(), where + ".factor");
        else if (group->factors().size() != 1)
            throw InputError(where + ".factor: required on a product of several cyclic groups");
        if (j.contains("n") && integer(j.at("n"), where + ".n") != group->factors()[factor])
            throw InputError(where + ".n: does not match the group's cyclic factor");
        int n = group->factors()[factor];
        if (k < 0 || k >= n) throw InputError(where + ".k: must satisfy 0 <= k < " + std::to_string(n));
        return cyclic_factor_generator(group, factor, static_cast<int>(k));
    }
    if (type == "product_ij") {
        need_group();
        if (!group->has_coords()) throw InputError(where + ": product generator needs a product of cyclic groups");
        std::size_t m = group->factors().size();
        auto i = one_based(field(j, "i", where), m, where + ".i");
        auto jj = one_based(field(j, "j", where), m, where + ".j");
        if (i == jj) throw InputError(where + ": i and j must be distinct");
        return product_generator_ij(group, i, jj);
    }
    if (type == "product_ijk") {
        need_group();
        if (!group->has_coords()) throw InputError(where + ": product generator needs a product of cyclic groups");
        std::size_t m = group->factors().size();
        auto i = one_based(field(j, "i", where), m, where + ".i");
        auto jj = one_based(field(j, "j", where), m, where + ".j");
        auto k = one_based(field(j, "k", where), m, where + ".k");
        if (i == jj || jj == k || i == k) throw InputError(where + ": i, j, k must be distinct");
        return product_generator_ijk(group, i, jj, k);
    }
    if (type == "pullback") {
        need_group();
        auto const& hom = field(j, "hom", where);
        auto target = group_from_json(field(hom, "target", where + ".hom"), where + ".hom.target");
        auto const& map = field(hom, "map", where + ".hom");
        if (!map.is_array() || map.size() != group->order())
            throw InputError(where + ".hom.map: expected one image per source element");
        std::vector<Element> images;
        for (std::size_t x = 0; x < map.size(); ++x)
            images.push_back(element_from_json(*target, map[x], where + ".hom.map[" + std::to_string(x) + "]"));
        auto h = GroupHom::make(group, target, std::move(images));
        auto inner = cocycle_from_json(field(j, "inner", where), target, where + ".inner");
        return pullback(h, inner);
    }
    if (type == "pointwise_product") {
        auto const& f = field(j, "factors", where);
        if (!f.is_array() || f.empty()) throw InputError(where + ".factors: expected a non-empty array");
        auto acc = cocycle_from_json(f[0], group, where + ".factors[0]");
        for (std::size_t i = 1; i < f.size(); ++i) {
            auto next = cocycle_from_json(f[i], acc.group(), where + ".factors[" + std::to_string(i) + "]");
            if (next.degree() != acc.degree()) throw InputError(where + ".factors: degrees differ");
            acc *= next;
        }
        return acc;
    }
    if (type == "table") {
        need_group();
        std::size_t degree = 3;
        if (j.contains("degree")) {
            auto d = integer(j.at("degree"), where + ".degree");
            if (d < 0 || d > 4) throw InputError(where + ".degree: must be between 0 and 4");
            degree = static_cast<std::size_t>(d);
        }
        GroupCochain c(group, degree);
        auto const& values = field(j, "values", where);
        if (!values.is_object()) throw InputError(where + ".values: expected an object");
        for (auto it = values.begin(); it != values.end(); ++it) {
            std::string w = where + ".values[\"" + it.key() + "\"]";
            auto args = it.key().empty() ? std::vector<std::size_t>{} : split_indices(it.key(), ',', w);
            if (args.size() != degree) throw InputError(w + ": expected " + std::to_string(degree) + " indices");
            for (auto a : args)
                if (a >= group->order()) throw InputError(w + ": element index out of range");
            c.set(args, phase_from_json(it.value(), w));
        }
        return c;
    }
    throw InputError(where + ".type: unknown cocycle type '" + type + "'");
}

json cochain_to_json(GroupCochain const& c)
{
    json values = json::object();
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c.value(i).is_neutral()) continue;
        std::string key;
        for (auto x : c.unflatten(i)) key += (key.empty() ? "" : ",") + std::to_string(x);
        values[key] = phase_to_json(c.value(i));
    }
    return {{"type", "table"}, {"degree", c.degree()}, {"values", values}};
}

GroupoidCochain groupoid_cochain_from_json(json const& j, ActionGroupoid const& g, std::string const& where)
{
    auto type = string_field(j, "type", where);
    if (type != "groupoid_table") throw InputError(where + ".type: expected 'groupoid_table'");
    auto degree = integer(field(j, "degree", where), where + ".degree");
    if (degree < 0 || degree > 3) throw InputError(where + ".degree: must be between 0 and 3");
    GroupoidCochain c(g, static_cast<std::size_t>(degree));
    auto const& values = field(j, "values", where);
    if (!values.is_object()) throw InputError(where + ".values: expected an object");
    std::size_t n = g.num_objects();
    for (auto it = values.begin(); it != values.end(); ++it) {
        std::string w = where + ".values[\"" + it.key() + "\"]";
        Phase v = phase_from_json(it.value(), w);
        if (degree == 0) {
            auto x = split_indices(it.key(), ',', w);
            if (x.size() != 1 || x[0] >= n) throw InputError(w + ": expected one object index");
            c.set_on_object(x[0], v);
            continue;
        }
        std::vector<Arrow> tuple;
        std::stringstream ss(it.key());
        std::string part;
        while (std::getline(ss, part, ';')) {
            auto sd = split_indices(part, ',', w);
            if (sd.size() != 2 || sd[0] >= n || sd[1] >= n) throw InputError(w + ": arrows are 's,dom' index pairs");
            tuple.push_back({sd[0], sd[1]});
        }
        if (tuple.size() != static_cast<std::size_t>(degree))
            throw InputError(w + ": expected " + std::to_string(degree) + " arrows");
        for (std::size_t i = 0; i + 1 < tuple.size(); ++i)
            if (!g.composable(tuple[i], tuple[i + 1])) throw InputError(w + ": arrows are not composable");
        c.set(tuple, v);
    }
    return c;
}

json groupoid_cochain_to_json(GroupoidCochain const& c)
{
    json values = json::object();
    auto const& g = c.groupoid();
    if (c.degree() == 0) {
        for (Element x = 0; x < g.num_objects(); ++x)
            if (!c.on_object(x).is_neutral()) values[std::to_string(x)] = phase_to_json(c.on_object(x));
    } else {
        g.for_each_composable(c.degree(), [&](std::span<Arrow const> t) {
            Phase v = c(t);
            if (v.is_neutral()) return;
            std::string key;
            for (Arrow a : t) key += (key.empty() ? "" : ";") + std::to_string(a.s) + "," + std::to_string(a.dom);
            values[key] = phase_to_json(v);
        });
    }
    return {{"type", "groupoid_table"}, {"degree", c.degree()}, {"values", values}};
}

json equivariant_to_json(EquivariantCochain const& c)
{
    json values = json::object();
    for (std::size_t i = 0; i < c.values().size(); ++i) {
        if (c.values()[i].is_neutral()) continue;
        auto args = c.unflatten(i);
        std::string key;
        for (std::size_t p = 0; p + 1 < args.size(); ++p) key += (key.empty() ? "" : ",") + std::to_string(args[p]);
        key += "@" + std::to_string(args.back());
        values[key] = phase_to_json(c.values()[i]);
    }
    return {{"type", "equivariant_table"}, {"degree", c.degree()}, {"values", values}};
}

SkeletalCategory category_from_json(json const& j, std::string const& where)
{
    auto type = string_field(j, "type", where);
    if (type == "pointed") {
        auto group = group_from_json(field(j, "group", where), where + ".group");
        auto omega = cocycle_from_json(field(j, "cocycle", where), group, where + ".cocycle");
        if (omega.degree() != 3) throw InputError(where + ".cocycle: expected a 3-cochain");
        auto check = is_cocycle(omega);
        if (!check.ok) throw ValidationError(where + ".cocycle: not a 3-cocycle");
        auto c = pointed_category(group, omega);
        validate_category(c);
        return c;
    }
    if (type != "skeletal") throw InputError(where + ".type: unknown category type '" + type + "'");

    CategoryData d;
    auto const& simples = field(j, "simples", where);
    if (!simples.is_array() || simples.empty()) throw InputError(where + ".simples: expected a non-empty array");
    for (auto const& s : simples) {
        if (!s.is_string()) throw InputError(where + ".simples: names must be strings");
        d.names.push_back(s.get<std::string>());
    }
    std::size_t n = d.names.size();
    auto simple_array = [&](char const* key) {
        auto const& a = field(j, key, where);
        if (!a.is_array() || a.size() != n)
            throw InputError(where + "." + key + ": expected one entry per simple");
        return &a;
    };
    auto const& dual = *simple_array("dual");
    for (std::size_t i = 0; i < n; ++i) d.dual.push_back(simple_from_json(d.names, dual[i], where + ".dual"));

    auto const& fusion = field(j, "fusion", where);
    if (!fusion.is_array()) throw InputError(where + ".fusion: expected an array of [a, b, c] rules");
    for (std::size_t r = 0; r < fusion.size(); ++r) {
        std::string w = where + ".fusion[" + std::to_string(r) + "]";
        if (!fusion[r].is_array() || fusion[r].size() != 3) throw InputError(w + ": expected [a, b, c]");
        d.fusion.push_back({simple_from_json(d.names, fusion[r][0], w), simple_from_json(d.names, fusion[r][1], w),
                            simple_from_json(d.names, fusion[r][2], w)});
    }

    d.grading_group = group_from_json(field(j, "grading_group", where), where + ".grading_group");
    auto const& grading = *simple_array("grading");
    for (std::size_t i = 0; i < n; ++i)
        d.grading.push_back(element_from_json(*d.grading_group, grading[i], where + ".grading[" + std::to_string(i) + "]"));

    auto const& qdim = *simple_array("qdim");
    for (std::size_t i = 0; i < n; ++i) d.qdim.push_back(number(qdim[i], where + ".qdim[" + std::to_string(i) + "]"));

    if (j.contains("duality_coeff")) {
        auto const& k = *simple_array("duality_coeff");
        for (std::size_t i = 0; i < n; ++i)
            d.duality_coeff.push_back(complex_from_json(k[i], where + ".duality_coeff[" + std::to_string(i) + "]"));
    }

    auto const& F = field(j, "F", where);
    if (!F.is_array()) throw InputError(where + ".F: expected an array of entries");
    for (std::size_t r = 0; r < F.size(); ++r) {
        std::string w = where + ".F[" + std::to_string(r) + "]";
        auto const& labels = field(F[r], "labels", w);
        if (!labels.is_array() || labels.size() != 6) throw InputError(w + ".labels: expected [a, b, c, d, e, f]");
        FLabels l{};
        for (std::size_t i = 0; i < 6; ++i) l[i] = simple_from_json(d.names, labels[i], w + ".labels");
        Complex v{number(field(F[r], "re", w), w + ".re"), F[r].contains("im") ? number(F[r].at("im"), w + ".im") : 0.0};
        d.F.push_back({l, v});
    }

    auto c = SkeletalCategory::make(std::move(d));
    validate_category(c);
    return c;
}

json category_to_json(SkeletalCategory const& c)
{
    auto d = c.data();
    json out = {{"type", "skeletal"}, {"simples", d.names}};
    json dual = json::array(), fusion = json::array(), grading = json::array(), F = json::array();
    for (Simple a : d.dual) dual.push_back(d.names[a]);
    for (auto const& t : d.fusion) fusion.push_back({d.names[t[0]], d.names[t[1]], d.names[t[2]]});
    for (Element g : d.grading) grading.push_back(g);
    for (auto const& e : d.F) {
        json labels = json::array();
        for (Simple x : e.labels) labels.push_back(d.names[x]);
        F.push_back({{"labels", labels}, {"re", e.value.real()}, {"im", e.value.imag()}});
    }
    out["dual"] = dual;
    out["fusion"] = fusion;
    out["grading_group"] = group_to_json(*d.grading_group);
    out["grading"] = grading;
    out["qdim"] = d.qdim;
    if (!d.duality_coeff.empty()) {
        json k = json::array();
        for (auto z : d.duality_coeff) k.push_back(complex_to_json(z));
        out["duality_coeff"] = k;
    }
    out["F"] = F;
    return out;
}

json tube_to_json(TubeAlgebra const& t)
{
    json basis = json::array(), degree = json::array(), product = json::array(), involution = json::array(),
         trace = json::array();
    auto const& names = t.simple_names();
    for (std::size_t i = 0; i < t.dim(); ++i) {
        auto const& e = t.element(i);
        basis.push_back({{"s", names[e.s]}, {"j", names[e.j]}, {"k", names[e.k]}, {"u", names[e.u]}});
        degree.push_back({t.degree(i).s, t.degree(i).dom});
        trace.push_back(t.trace(i).real());
    }
    auto coeff = [&](Term const& term) -> json {
        if (t.exact()) return phase_to_json(term.phase);
        return complex_to_json(term.value);
    };
    for (std::size_t i = 0; i < t.dim(); ++i)
        for (std::size_t j = 0; j < t.dim(); ++j)
            for (auto const& term : t.product(i, j)) product.push_back({i, j, term.index, coeff(term)});
    if (t.has_involution())
        for (std::size_t i = 0; i < t.dim(); ++i)
            for (auto const& term : t.involution(i)) involution.push_back({i, term.index, coeff(term)});
    json out = {{"dim", t.dim()},       {"exact", t.exact()}, {"basis", basis}, {"degree", degree},
                {"product", product}, {"trace", trace}};
    if (t.has_involution()) out["involution"] = involution;
    else out["involution"] = nullptr;
    return out;
}

}  // namespace tubealg::io
