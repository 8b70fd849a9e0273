#include "cli.hpp"

#include "tubealg/action_groupoid.hpp"
#include "tubealg/error.hpp"
#include "tubealg/io.hpp"
#include "tubealg/spectrum.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

namespace tubealg::cli {

namespace {

using io::json;

struct Options {
    std::string spec, group, cocycle, category, psi, element, out;
    std::string format = "json";
    std::uint64_t seed = default_spectrum_seed;
    double tolerance = 1e-9;
    int max_n = 12;
    std::size_t samples = 1000;
};

struct Outcome {
    json report;
    int status = 0;
    std::string summary;
};

// ---- input assembly ----------------------------------------------------------

GroupPtr load_group(Options const& o)
{
    if (o.group.empty()) return nullptr;
    return io::group_from_json(io::read_json_file(o.group), o.group);
}

GroupCochain load_cocycle(std::string const& path, GroupPtr const& group)
{
    return io::cocycle_from_json(io::read_json_file(path), group, path);
}

std::optional<GroupCochain> twisting_cocycle(Options const& o, GroupPtr const& group)
{
    if (o.cocycle.empty()) return std::nullopt;
    return load_cocycle(o.cocycle, group);
}

// The untwisted category: --category as given, or Vec over --group.
SkeletalCategory base_category(Options const& o, std::optional<GroupCochain> const& omega)
{
    if (!o.category.empty()) return io::category_from_json(io::read_json_file(o.category), o.category);
    GroupPtr g = load_group(o);
    if (!g && omega) g = omega->group();
    if (!g) throw InputError("need --category or --group");
    return pointed_category(g, GroupCochain::constant(g, 3));
}

GroupPtr grading_group_of(Options const& o)
{
    if (!o.category.empty()) return base_category(o, std::nullopt).grading_group();
    return load_group(o);
}

struct Target {
    SkeletalCategory base;
    std::optional<GroupCochain> omega;
    SkeletalCategory twisted;
};

Target target_category(Options const& o)
{
    auto group = grading_group_of(o);
    auto omega = twisting_cocycle(o, group);
    auto base = base_category(o, omega);
    auto twisted = omega ? twist(base, *omega) : base;
    return {std::move(base), std::move(omega), std::move(twisted)};
}

std::string label_list(FiniteGroup const& g, std::vector<std::size_t> const& xs)
{
    std::string s;
    for (auto x : xs) s += (s.empty() ? "" : ",") + g.label(x);
    return "(" + s + ")";
}

json labels_json(FiniteGroup const& g, std::vector<Element> const& xs)
{
    json out = json::array();
    for (auto x : xs) out.push_back(g.label(x));
    return out;
}

json check_json(CocycleCheck const& c, FiniteGroup const& g, bool arrows)
{
    json out = {{"ok", c.ok}};
    if (!c.ok) {
        json w = json::array();
        if (arrows)
            for (std::size_t i = 0; i + 1 < c.witness.size(); i += 2)
                w.push_back({g.label(c.witness[i]), g.label(c.witness[i + 1])});
        else
            for (auto x : c.witness) w.push_back(g.label(x));
        out["witness"] = w;
        out["value"] = io::phase_to_json(c.value);
    }
    return out;
}

json law_json(LawReport const& r)
{
    json out = {{"ok", r.ok}, {"residual", r.residual}};
    if (!r.ok) out["failure"] = r.failure;
    return out;
}

json wedderburn_json(WedderburnReport const& r)
{
    json classes = json::array();
    for (auto const& c : r.per_class)
        classes.push_back({{"class", c.label},
                           {"class_size", c.conjugacy_class.size()},
                           {"algebra_dim", c.algebra_dim},
                           {"center_dim", c.center_dim},
                           {"block_dims", c.block_dims}});
    return {{"algebra_dim", r.algebra_dim}, {"center_dim", r.center_dim}, {"block_dims", r.block_dims},
            {"commutative", r.commutative}, {"exact_center", r.exact_center}, {"per_class", classes},
            {"seed", r.seed},               {"reseeds", r.reseeds}};
}

std::string dims_text(std::vector<std::size_t> const& d)
{
    std::string s;
    for (auto x : d) s += (s.empty() ? "" : ",") + std::to_string(x);
    return "{" + s + "}";
}

// ---- commands ------------------------------------------------------------------

Outcome cmd_group(Options const& o)
{
    std::string path = o.spec.empty() ? o.group : o.spec;
    if (path.empty()) throw InputError("group: need --spec");
    auto g = io::group_from_json(io::read_json_file(path), path);
    json classes = json::array(), centralizers = json::object();
    for (auto const& cls : conjugacy_classes(*g)) {
        classes.push_back(labels_json(*g, cls));
        centralizers[g->label(cls.front())] = centralizer(*g, cls.front()).size();
    }
    bool abelian = true;
    for (Element a = 0; a < g->order(); ++a)
        for (Element b = 0; b < g->order(); ++b) abelian = abelian && g->mul(a, b) == g->mul(b, a);
    Outcome r;
    r.report = {{"group", io::group_to_json(*g)},
                {"order", g->order()},
                {"abelian", abelian},
                {"conjugacy_classes", classes},
                {"centralizer_orders", centralizers}};
    r.summary = "group of order " + std::to_string(g->order()) + " with " + std::to_string(classes.size()) +
                " conjugacy classes";
    return r;
}

Outcome cmd_cocycle_check(Options const& o)
{
    if (o.spec.empty()) throw InputError("cocycle check: need --spec");
    auto c = load_cocycle(o.spec, load_group(o));
    auto check = is_cocycle(c);
    Outcome r;
    r.report = check_json(check, *c.group(), false);
    r.report["is_cocycle"] = check.ok;
    r.report["normalized"] = c.is_normalized();
    r.report["degree"] = c.degree();
    r.report.erase("ok");
    r.status = check.ok ? 0 : 1;
    r.summary = check.ok ? "cocycle" : "not a cocycle: coboundary at " + label_list(*c.group(), check.witness) +
                                           " is " + check.value.to_string();
    return r;
}

Outcome cmd_cocycle_transport(Options const& o)
{
    std::string path = o.spec.empty() ? o.cocycle : o.spec;
    if (path.empty()) throw InputError("cocycle transport: need --spec");
    auto omega = load_cocycle(path, load_group(o));
    auto const& G = omega.group();
    auto twisted = build_tube(pointed_category(G, omega));
    auto untwisted = build_tube(pointed_category(G, GroupCochain::constant(G, 3)));

    std::vector<Element> elements;
    if (o.element.empty()) {
        for (Element a = 0; a < G->order(); ++a) elements.push_back(a);
    } else {
        json e = json::parse(o.element, nullptr, false);
        if (e.is_discarded()) e = o.element;
        elements.push_back(io::element_from_json(*G, e, "--element"));
    }

    Outcome r;
    json rows = json::array();
    std::size_t failures = 0;
    for (Element a : elements) {
        json row = {{"element", G->label(a)}};
        auto eta = solve_coboundary(normalized_centralizer_cocycle(omega, a).phi);
        row["target"] = "phi_prime";
        if (!eta) {
            eta = solve_coboundary(centralizer_cocycle(omega, a).phi);
            row["target"] = "phi";
        }
        if (!eta) {
            row["trivial"] = false;
            row["ok"] = false;
            ++failures;
        } else {
            auto t = coboundary_transport(twisted, untwisted, omega, a, *eta);
            row["trivial"] = true;
            row["ok"] = t.ok;
            row["eta"] = io::cochain_to_json(*eta);
            if (!t.ok) {
                row["witness"] = t.witness;
                ++failures;
            }
        }
        rows.push_back(row);
    }
    r.report = {{"pass", failures == 0}, {"blocks", rows}};
    r.status = failures == 0 ? 0 : 1;
    r.summary = failures == 0 ? "every centralizer block transports to the untwisted one"
                              : std::to_string(failures) + " block(s) not transported";
    return r;
}

Outcome cmd_cocycle_residue(Options const& o)
{
    if (o.max_n < 1) throw InputError("--n must be >= 1");
    json rows = json::array();
    bool pass = true;
    for (int n = 1; n <= o.max_n; ++n) {
        bool ok = residue_identity_check(n);
        pass = pass && ok;
        rows.push_back({{"n", n}, {"ok", ok}});
    }
    Outcome r;
    r.report = {{"pass", pass}, {"cases", rows}};
    r.status = pass ? 0 : 1;
    r.summary = pass ? "residue identity holds for n <= " + std::to_string(o.max_n) : "residue identity fails";
    return r;
}

Outcome cmd_induce(Options const& o)
{
    std::string path = o.spec.empty() ? o.cocycle : o.spec;
    if (path.empty()) throw InputError("induce: need --spec");
    auto omega = load_cocycle(path, load_group(o));
    auto const& G = *omega.group();
    auto Psi = induce_Psi(omega);
    auto psi = induce_psi(omega);
    auto norm = normalize_psi(psi);
    auto monad = monad_psi_tilde(omega);

    json checks = {{"psi_cocycle", check_json(is_cocycle(psi), G, true)},
                   {"Psi_cocycle", check_json(is_cocycle(Psi), G, false)},
                   {"inverse_symmetry", check_json(inverse_symmetry_check(psi), G, false)},
                   {"normalized_cocycle", check_json(is_cocycle(norm.psi_prime), G, true)},
                   {"monad_certificate", check_json(monad.certificate, G, true)}};
    bool pass = true;
    for (auto const& [k, v] : checks.items()) pass = pass && v["ok"].get<bool>();
    Outcome r;
    r.report = {{"pass", pass},
                {"checks", checks},
                {"psi", io::groupoid_cochain_to_json(psi)},
                {"Psi", io::equivariant_to_json(Psi)},
                {"xi", io::groupoid_cochain_to_json(norm.xi)},
                {"psi_prime", io::groupoid_cochain_to_json(norm.psi_prime)}};
    r.status = pass ? 0 : 1;
    r.summary = pass ? "induced psi is a cocycle; normalization and monad checks pass" : "induced cocycle checks failed";
    return r;
}

Outcome cmd_tube_build(Options const& o)
{
    auto t = build_tube(target_category(o).twisted);
    Outcome r;
    r.report = io::tube_to_json(t);
    r.summary = "tube algebra of dimension " + std::to_string(t.dim());
    return r;
}

GroupoidCochain load_or_induce_psi(Options const& o, Target const& tgt, ActionGroupoid const& gpd)
{
    if (!o.psi.empty()) return io::groupoid_cochain_from_json(io::read_json_file(o.psi), gpd, o.psi);
    if (!tgt.omega) throw InputError("need --cocycle or --psi");
    return induce_psi(*tgt.omega);
}

Outcome cmd_tube_twist(Options const& o)
{
    auto tgt = target_category(o);
    auto base = build_tube(tgt.base);
    auto t = twist_fell_bundle(base, load_or_induce_psi(o, tgt, base.groupoid()));
    Outcome r;
    r.report = io::tube_to_json(t);
    r.summary = "twisted Fell bundle of dimension " + std::to_string(t.dim());
    return r;
}

Outcome cmd_tube_verify(Options const& o)
{
    auto t = build_tube(target_category(o).twisted);
    json laws = {{"associativity", law_json(check_associativity(t, o.tolerance))},
                 {"fell_grading", law_json(check_fell_grading(t))}};
    if (!t.exact()) laws["associativity_sampled"] = law_json(check_associativity_sampled(t, o.samples, static_cast<unsigned>(o.seed), o.tolerance));
    if (t.has_involution()) {
        laws["involution"] = law_json(check_involution(t, o.tolerance));
        laws["trace"] = law_json(check_trace(t, o.tolerance));
        laws["gram"] = law_json(check_gram(t, o.tolerance));
    }
    if (t.pointed() && t.has_involution()) {
        auto c = corner_unit_check(t);
        laws["corner_unit"] = {{"ok", c.ok}, {"checked", c.checked}};
        if (!c.ok) laws["corner_unit"]["failure"] = c.witness;
    }
    bool pass = true;
    std::string failed;
    for (auto const& [k, v] : laws.items())
        if (!v["ok"].get<bool>()) {
            pass = false;
            failed += (failed.empty() ? "" : ", ") + k;
        }
    Outcome r;
    r.report = {{"pass", pass}, {"dim", t.dim()}, {"laws", laws}};
    r.status = pass ? 0 : 1;
    r.summary = pass ? "all algebra laws hold on dimension " + std::to_string(t.dim()) : "failed: " + failed;
    return r;
}

Outcome cmd_spectrum(Options const& o)
{
    auto t = build_tube(target_category(o).twisted);
    auto w = wedderburn(t, o.seed, std::max(o.tolerance, 1e-8));
    Outcome r;
    r.report = wedderburn_json(w);
    r.summary = "dim " + std::to_string(w.algebra_dim) + ", center " + std::to_string(w.center_dim) + ", blocks " +
                dims_text(w.block_dims);
    return r;
}

Outcome cmd_compare(Options const& o)
{
    auto tgt = target_category(o);
    auto base = build_tube(tgt.base);
    auto other = o.psi.empty() ? build_tube(tgt.twisted) : twist_fell_bundle(base, load_or_induce_psi(o, tgt, base.groupoid()));
    auto a = wedderburn(base, o.seed), b = wedderburn(other, o.seed);
    auto cmp = compare_spectra(a, b);
    json deltas = json::array();
    for (auto const& d : cmp.deltas)
        deltas.push_back({{"class", d.label},
                          {"center_dim", {d.center_dim_1, d.center_dim_2}},
                          {"block_dims", {d.block_dims_1, d.block_dims_2}}});
    Outcome r;
    std::string relation = cmp.center_dim_2 < cmp.center_dim_1   ? "smaller"
                           : cmp.center_dim_2 > cmp.center_dim_1 ? "larger"
                                                                 : "equal";
    r.report = {{"equal_center", cmp.equal_center},
                {"equal_blocks", cmp.equal_blocks},
                {"center_dim", {cmp.center_dim_1, cmp.center_dim_2}},
                {"twisted_center", relation},
                {"deltas", deltas},
                {"untwisted", wedderburn_json(a)},
                {"twisted", wedderburn_json(b)}};
    r.summary = "center " + std::to_string(cmp.center_dim_1) + " -> " + std::to_string(cmp.center_dim_2) + " (" +
                relation + "), " + std::to_string(cmp.deltas.size()) + " class(es) differ";
    return r;
}

Outcome cmd_verify(Options const& o)
{
    auto tgt = target_category(o);
    if (!tgt.omega) throw InputError("verify: need --cocycle");
    Outcome r;
    if (o.psi.empty()) {
        auto rep = verify_twist_theorem(tgt.base, *tgt.omega, o.tolerance);
        r.report = {{"pass", rep.pass},   {"exact", rep.exact}, {"discrepancy", rep.max_discrepancy},
                    {"dim", rep.dim},     {"psi", "induced"}};
        if (!rep.pass) r.report["witness"] = rep.witness;
        r.status = rep.pass ? 0 : 1;
        r.summary = (rep.pass ? "twist theorem holds" : "twist theorem fails at " + rep.witness) +
                    ", max discrepancy " + std::to_string(rep.max_discrepancy);
        return r;
    }
    auto base = build_tube(tgt.base);
    auto psi = io::groupoid_cochain_from_json(io::read_json_file(o.psi), base.groupoid(), o.psi);
    auto const& G = *base.grading_group();
    if (auto check = is_cocycle(psi); !check.ok) {
        r.report = {{"pass", false}, {"psi", o.psi}, {"reason", "psi is not a groupoid 2-cocycle"}};
        r.report["witness"] = check_json(check, G, true)["witness"];
        r.status = 1;
        r.summary = "supplied psi is not a 2-cocycle";
        return r;
    }
    auto direct = build_tube(tgt.twisted);
    auto cmp = compare_tables(direct, twist_fell_bundle(base, psi), o.tolerance);
    r.report = {{"pass", cmp.equal}, {"exact", direct.exact()}, {"discrepancy", cmp.max_discrepancy},
                {"dim", direct.dim()}, {"psi", o.psi}};
    if (!cmp.equal) r.report["witness"] = cmp.witness;
    r.status = cmp.equal ? 0 : 1;
    r.summary = cmp.equal ? "supplied psi reproduces the twisted tube algebra" : "mismatch at " + cmp.witness;
    return r;
}

// ---- output --------------------------------------------------------------------

std::string render(Outcome const& r, std::string const& format)
{
    if (format == "summary") return r.summary + "\n";
    return r.report.dump(2) + "\n";
}

}  // namespace

int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"tubealg: tube algebras of graded fusion categories and their cocycle twists"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* c) {
        c->add_option("--out", o.out, "write the report here instead of stdout");
        c->add_option("--format", o.format, "json or summary")->check(CLI::IsMember({"json", "summary"}));
        c->add_option("--seed", o.seed, "seed for randomized steps");
        c->add_option("--tolerance", o.tolerance, "float comparison tolerance");
    };
    auto add_inputs = [&](CLI::App* c) {
        c->add_option("--group", o.group, "group spec JSON");
        c->add_option("--cocycle", o.cocycle, "3-cocycle spec JSON used for twisting");
        c->add_option("--category", o.category, "category spec JSON");
        add_common(c);
    };

    std::function<Outcome(Options const&)> action;
    auto bind = [&](CLI::App* c, Outcome (*fn)(Options const&)) { c->callback([&action, fn] { action = fn; }); };

    auto group = app.add_subcommand("group", "summarize a group spec");
    group->add_option("--spec", o.spec, "group spec JSON");
    add_inputs(group);
    bind(group, cmd_group);

    auto cocycle = app.add_subcommand("cocycle", "group cocycle utilities");
    cocycle->require_subcommand(1);
    auto check = cocycle->add_subcommand("check", "test the cocycle condition");
    check->add_option("--spec", o.spec, "cochain spec JSON");
    add_inputs(check);
    bind(check, cmd_cocycle_check);
    auto transport = cocycle->add_subcommand("transport", "solve phi'_a = delta eta and transport each diagonal block");
    transport->add_option("--spec", o.spec, "3-cocycle spec JSON");
    transport->add_option("--element", o.element, "a single element (index, label or coordinates)");
    add_inputs(transport);
    bind(transport, cmd_cocycle_transport);
    auto residue = cocycle->add_subcommand("residue", "check the residue/floor identity for n = 1..N");
    residue->add_option("--n", o.max_n, "largest n");
    add_common(residue);
    bind(residue, cmd_cocycle_residue);

    auto induce = app.add_subcommand("induce", "induced groupoid 2-cocycle of a 3-cocycle, with checks");
    induce->add_option("--spec", o.spec, "3-cocycle spec JSON");
    add_inputs(induce);
    bind(induce, cmd_induce);

    auto tube = app.add_subcommand("tube", "tube algebra tables");
    tube->require_subcommand(1);
    auto build = tube->add_subcommand("build", "tube algebra of the (twisted) category");
    add_inputs(build);
    bind(build, cmd_tube_build);
    auto tw = tube->add_subcommand("twist", "twist the untwisted Fell bundle by psi");
    tw->add_option("--psi", o.psi, "groupoid 2-cocycle JSON instead of the induced one");
    add_inputs(tw);
    bind(tw, cmd_tube_twist);
    auto verify_laws = tube->add_subcommand("verify", "check the algebra laws");
    verify_laws->add_option("--samples", o.samples, "random triples for skeletal associativity");
    add_inputs(verify_laws);
    bind(verify_laws, cmd_tube_verify);

    auto spectrum = app.add_subcommand("spectrum", "center dimension and Wedderburn blocks");
    add_inputs(spectrum);
    bind(spectrum, cmd_spectrum);

    auto compare = app.add_subcommand("compare", "compare spectra of the untwisted and twisted algebras");
    compare->add_option("--psi", o.psi, "groupoid 2-cocycle JSON instead of --cocycle");
    add_inputs(compare);
    bind(compare, cmd_compare);

    auto verify = app.add_subcommand("verify", "check T(C^omega) against the psi-twisted Fell bundle");
    verify->add_option("--psi", o.psi, "groupoid 2-cocycle JSON instead of the induced one");
    add_inputs(verify);
    bind(verify, cmd_verify);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (CLI::CallForHelp const&) {
        out << app.help();
        return 0;
    } catch (CLI::CallForAllHelp const&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (CLI::ParseError const& e) {
        std::ostringstream help;
        app.exit(e, help, err);
        return 2;
    }

    Outcome result;
    try {
        result = action(o);
    } catch (InputError const& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (Unsupported const& e) {
        err << "unsupported: " << e.what() << "\n";
        return 2;
    } catch (io::json::exception const& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (std::exception const& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    std::string text = render(result, o.format);
    if (o.out.empty()) {
        out << text;
    } else {
        std::ofstream f(o.out);
        if (!f) {
            err << "input error: cannot write " << o.out << "\n";
            return 2;
        }
        f << text;
    }
    if (o.format == "json") err << result.summary << "\n";
    return result.status;
}

}  // namespace tubealg::cli
