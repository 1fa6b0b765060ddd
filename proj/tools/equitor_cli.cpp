// equitor: command-line front end. JSON on stdout, a short summary on stderr.
// Exit codes: 0 success (negative verdicts included), 1 internal failure, 2 usage or bad input,
// 3 cap exceeded or inconclusive conjugacy.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "equitor/acceptance.hpp"

using namespace equitor;
using json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json to_json(const Int& x) {
    if (x.fits_slong_p()) return x.get_si();
    return x.get_str();
}
json to_json(const IntVec& v) {
    json a = json::array();
    for (auto& x : v) a.push_back(to_json(x));
    return a;
}
json to_json(const IntMatrix& m) {
    json a = json::array();
    for (size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
    return a;
}
json to_json(const RatVec& v) {
    json a = json::array();
    for (auto& x : v) a.push_back(x.get_str());
    return a;
}
json to_json(const GroupElement& g) { return json{{"torus", torus_strings(g.s)}, {"matrix", to_json(g.A)}}; }
json to_json(const std::vector<GroupElement>& gs) {
    json a = json::array();
    for (auto& g : gs) a.push_back(to_json(g));
    return a;
}

IntMatrix matrix_from_json(const json& j, size_t n) {
    if (!j.is_array() || j.size() != n) throw UsageError("matrix must have " + std::to_string(n) + " rows");
    std::vector<IntVec> rows;
    for (auto& r : j) {
        if (!r.is_array() || r.size() != n) throw UsageError("matrix rows must have " + std::to_string(n) + " entries");
        IntVec v;
        for (auto& x : r) {
            if (x.is_number_integer()) v.emplace_back(x.get<long>());
            else if (x.is_string()) v.emplace_back(x.get<std::string>());
            else throw UsageError("matrix entries must be integers");
        }
        rows.push_back(v);
    }
    return IntMatrix::from_rows(rows, n);
}

std::vector<GroupElement> generators_from_json(const json& j) {
    if (!j.contains("n") || !j.contains("generators")) throw UsageError("group JSON needs \"n\" and \"generators\"");
    size_t n = j.at("n").get<size_t>();
    if (n < 1 || n > 3) throw UsageError("n must be 1, 2 or 3");
    std::vector<GroupElement> gens;
    for (auto& g : j.at("generators")) {
        GroupElement e;
        e.A = matrix_from_json(g.at("matrix"), n);
        Int d = e.A.det();
        if (d != 1 && d != -1) throw UsageError("generator matrix is not in GL_n(Z)");
        std::vector<std::string> t;
        if (g.contains("torus"))
            for (auto& x : g.at("torus")) t.push_back(x.is_string() ? x.get<std::string>() : x.dump());
        else
            t.assign(n, "0");
        if (t.size() != n) throw UsageError("torus part must have " + std::to_string(n) + " entries");
        e.s = parse_torus(t);
        gens.push_back(e);
    }
    if (gens.empty()) gens.push_back(GroupElement::identity(n));
    return gens;
}

// a JSON file, or the name of a catalogue entry
AffineGroup load_group(const std::string& arg) {
    if (arg.empty()) throw UsageError("--group is required");
    if (!std::filesystem::exists(arg)) {
        for (auto& e : catalogue())
            if (e.name == arg) return e.group();
        throw UsageError("no such group file or catalogue entry: " + arg);
    }
    json j;
    try {
        j = json::parse(read_file(arg));
    } catch (const json::exception& e) {
        throw UsageError(std::string("bad group JSON: ") + e.what());
    }
    return AffineGroup::close(generators_from_json(j));
}

json model_json(const ToricModel& m) {
    json cones = json::array();
    for (auto& c : m.fan.max_cones) {
        json a = json::array();
        for (int i : c) a.push_back(i + 1);
        cones.push_back(a);
    }
    json rays = json::array();
    for (auto& r : m.fan.rays) rays.push_back(to_json(r));
    return json{{"name", m.name},
                {"n", m.fan.n},
                {"rays", rays},
                {"cones", cones},
                {"fan_text", fan_to_text(m.fan)},
                {"pl_rank", m.pl_rank()},
                {"pic_rank", m.pic_rank()},
                {"m_embedding", to_json(m.m_embedding)},
                {"section", to_json(m.section)},
                {"pic_projection", to_json(m.pic_projection)}};
}

// a model name, a fan text file, or the JSON written by model-build
ToricModel load_model(const std::string& arg) {
    if (!std::filesystem::exists(arg)) {
        auto names = model_names();
        if (std::find(names.begin(), names.end(), arg) == names.end())
            throw UsageError("no such model file or model name: " + arg);
        return build_model(arg);
    }
    std::string text = read_file(arg);
    size_t p = text.find_first_not_of(" \t\r\n");
    if (p != std::string::npos && text[p] == '{') {
        json j;
        try {
            j = json::parse(text);
        } catch (const json::exception& e) {
            throw UsageError(std::string("bad model JSON: ") + e.what());
        }
        Fan f = fan_from_text(j.at("fan_text").get<std::string>());
        std::string name = j.value("name", std::filesystem::path(arg).stem().string());
        if (!j.contains("section")) return ToricModel::from_fan(name, f);
        std::vector<IntVec> rows;
        for (auto& r : j.at("section")) {
            IntVec v;
            for (auto& x : r) v.emplace_back(x.is_string() ? Int(x.get<std::string>()) : Int(x.get<long>()));
            rows.push_back(v);
        }
        return ToricModel::with_section(name, f, IntMatrix::from_rows(rows, f.rays.size()));
    }
    return ToricModel::from_fan(std::filesystem::path(arg).stem().string(), fan_from_text(text));
}

struct Placed {
    ToricModel model;
    IntMatrix X;
    AffineGroup group;
};
// the given model, or the preferred invariant model after a change of coordinates
Placed place(const AffineGroup& G, const std::string& model_arg) {
    if (model_arg.empty()) {
        ModelChoice mc = choose_model(G);
        return {mc.model, mc.X, mc.group};
    }
    ToricModel m = load_model(model_arg);
    if (m.fan.n != G.dim()) throw DimensionMismatch("model and group dimensions differ");
    if (!is_invariant(m.fan, G.image())) throw FanNotInvariant("the fan of " + m.name + " is not G-invariant");
    return {m, IntMatrix::identity(G.dim()), G};
}

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

template <class T>
json opt_json(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

json verdict_json(const Verdict& v) {
    json j{{"A", v.condition_A}, {"U", v.U}, {"SL", v.SL}};
    if (v.dim == 2) j["linearizable"] = opt_json(v.linearizable);
    j["dim"] = v.dim;
    j["group_hash"] = v.group_hash;
    j["order"] = v.order;
    j["torus_order"] = v.torus_order;
    j["image_order"] = v.image_order;
    j["model"] = v.model;
    j["conjugator"] = to_json(v.conjugator);
    j["pic_invariant_rank"] = v.pic_invariant_rank;
    j["contains_k9"] = v.contains_k9;
    j["bad_groups"] = v.bad_groups;
    j["beta_vanishes"] = opt_json(v.beta_vanishes);
    j["criterion_agrees"] = opt_json(v.criterion_agrees);
    j["models_agree"] = opt_json(v.models_agree);
    if (v.dim == 2) j["table_agrees"] = opt_json(v.table_agrees);
    j["cross_check"] = opt_json(v.cross_check);
    j["justification"] = v.justification;
    return j;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}
std::string tri(const std::optional<bool>& b) { return b ? (*b ? "1" : "0") : ""; }

struct Options {
    std::string group, model, family = "Q", name, format = "json", classes, denominators = "2";
    int n = 4, jobs = 0, dim = 3;
    size_t max_order = 0, max_groups = 0, beta_max = 64, max_nonzeros = 0;
    double time_budget = 0;
    std::vector<int> criteria;
    bool second_model = false, no_cross_check = false;
};

int cmd_catalog(const Options& o) {
    json out = json::array();
    for (auto& e : catalogue()) {
        if (!o.name.empty() && e.name != o.name) continue;
        out.push_back(json{{"name", e.name},
                           {"role", e.role},
                           {"n", e.dim()},
                           {"order", e.group().order()},
                           {"generators", to_json(e.generators)}});
    }
    if (!o.name.empty() && out.empty()) throw UsageError("no catalogue entry named " + o.name);
    std::cout << (o.name.empty() ? out : out[0]).dump(2) << "\n";
    std::cerr << out.size() << " catalogue entries\n";
    return 0;
}

int cmd_group_info(const Options& o) {
    AffineGroup G = load_group(o.group);
    json image = json::array();
    for (auto& A : G.image()) image.push_back(to_json(A));
    json sylows = json::object();
    int m = G.order();
    for (int p = 2; p <= m; ++p) {
        bool prime = true;
        for (int q = 2; q * q <= p; ++q) prime &= p % q != 0;
        if (!prime || m % p) continue;
        sylows[std::to_string(p)] = sylow(G, p).order();
        while (m % p == 0) m /= p;
    }
    json out{{"n", G.dim()},
             {"hash", G.hash()},
             {"order", G.order()},
             {"torus_order", G.torus_kernel().size()},
             {"image_order", G.image().size()},
             {"abelian", G.is_abelian()},
             {"matrix_group", G.is_matrix_group()},
             {"conjugate_to_matrix_group", conjugate_to_matrix_group(G)},
             {"sylow_orders", sylows},
             {"generators", to_json(G.generators())},
             {"image", image}};
    std::cout << out.dump(2) << "\n";
    std::cerr << "group " << G.hash() << ": order " << G.order() << ", |G_T| = " << G.torus_kernel().size() << "\n";
    return 0;
}

int cmd_model_build(const Options& o) {
    if (o.model.empty()) throw UsageError("--model is required");
    ToricModel m = load_model(o.model);
    std::cout << model_json(m).dump(2) << "\n";
    std::cerr << "model " << m.name << ": " << m.fan.rays.size() << " rays, " << m.fan.max_cones.size()
              << " maximal cones, Pic rank " << m.pic_rank() << "\n";
    return 0;
}

int cmd_model_check(const Options& o) {
    if (o.model.empty()) throw UsageError("--model is required");
    ToricModel m = load_model(o.model);
    json cones = json::array();
    for (size_t d = 0; d <= m.fan.n; ++d) cones.push_back(m.fan.count_cones(d));
    json out{{"name", m.name},
             {"n", m.fan.n},
             {"rays", m.fan.rays.size()},
             {"cones_by_dim", cones},
             {"smooth", is_smooth(m.fan)},
             {"complete", is_complete(m.fan)},
             {"pic_rank", m.pic_rank()},
             {"automorphism_order", automorphism_group(m.fan).size()}};
    if (!o.group.empty()) {
        AffineGroup G = load_group(o.group);
        if (G.dim() != m.fan.n) throw DimensionMismatch("model and group dimensions differ");
        bool inv = is_invariant(m.fan, G.image());
        out["group_hash"] = G.hash();
        out["invariant"] = inv;
        if (inv) {
            out["fixed_point"] = has_fixed_point(m.fan, G.elements());
            ConditionAResult a = condition_A(m.fan, G);
            out["condition_A"] = a.holds;
            out["abelian_subgroups_checked"] = a.checked;
        }
    }
    std::cout << out.dump(2) << "\n";
    std::cerr << "model " << m.name << (out["smooth"].get<bool>() ? " smooth" : " not smooth")
              << (out["complete"].get<bool>() ? ", complete" : ", not complete") << "\n";
    return 0;
}

int cmd_fixed_points(const Options& o) {
    AffineGroup G0 = load_group(o.group);
    Placed pl = place(G0, o.model);
    const Fan& f = pl.model.fan;
    std::vector<IntMatrix> mats = pl.group.image();
    json orbits = json::array();
    for (auto& c : f.all_cones()) {
        bool stable = true;
        for (auto& A : mats) stable &= stabilizes(f, c, A);
        if (!stable) continue;
        json cj = json::array();
        for (int i : c) cj.push_back(i + 1);
        orbits.push_back(json{{"cone", cj}, {"dim", c.size()}, {"fixed_point", orbit_fixed_point(f, pl.group.generators(), c)}});
    }
    bool any = has_fixed_point(f, pl.group.generators());
    json out{{"group_hash", G0.hash()},
             {"model", pl.model.name},
             {"conjugator", to_json(pl.X)},
             {"fixed_point", any},
             {"stable_orbits", orbits}};
    std::cout << out.dump(2) << "\n";
    std::cerr << "model " << pl.model.name << ": " << (any ? "fixed point exists" : "no fixed point") << "\n";
    return 0;
}

int cmd_condition_a(const Options& o) {
    AffineGroup G0 = load_group(o.group);
    Placed pl = place(G0, o.model);
    ConditionAResult a = condition_A(pl.model.fan, pl.group);
    json witness = json::array();
    for (int i : a.witness) witness.push_back(to_json(pl.group.element(i)));
    json out{{"group_hash", G0.hash()},
             {"model", pl.model.name},
             {"conjugator", to_json(pl.X)},
             {"A", a.holds},
             {"abelian_subgroups_checked", a.checked},
             {"witness", witness}};
    std::cout << out.dump(2) << "\n";
    std::cerr << "Condition (A) " << (a.holds ? "holds" : "fails") << " on " << pl.model.name << "\n";
    return 0;
}

int cmd_beta(const Options& o) {
    AffineGroup G0 = load_group(o.group);
    Placed pl = place(G0, o.model);
    BetaOptions bo;
    bo.max_order = o.beta_max;
    bo.max_nonzeros = o.max_nonzeros;
    bo.time_budget = o.time_budget;
    ObstructionReport r = beta(pl.model, pl.group, bo);
    json out{{"group_hash", G0.hash()},
             {"model", r.model},
             {"conjugator", to_json(pl.X)},
             {"order", r.group_order},
             {"resolution", r.resolution},
             {"ranks", r.ranks},
             {"stage2", to_json(r.stage2)},
             {"integral", to_json(r.integral)},
             {"h3_invariants", to_json(r.h3_invariants)},
             {"certificate", to_json(r.certificate)},
             {"verdict", r.vanishes ? "Vanishes" : "NonVanishing"}};
    std::cout << out.dump(2) << "\n";
    std::cerr << "beta on " << r.model << ": " << (r.vanishes ? "Vanishes" : "NonVanishing") << " (" << r.seconds
              << " s)\n";
    return 0;
}

ClassifyOptions classify_options(const Options& o) {
    ClassifyOptions c;
    c.beta_max_order = o.beta_max;
    c.cross_check = !o.no_cross_check;
    c.second_model = o.second_model;
    return c;
}

int cmd_classify(const Options& o) {
    AffineGroup G = load_group(o.group);
    Verdict v = classify(G, classify_options(o));
    std::cout << verdict_json(v).dump(2) << "\n";
    std::cerr << "A=" << v.condition_A << " U=" << v.U << " SL=" << v.SL << " on model " << v.model << "\n";
    return 0;
}

int cmd_sweep(const Options& o) {
    SweepSpec sp;
    sp.dim = o.dim;
    sp.classes = split(o.classes);
    if (sp.classes.empty())
        for (auto& e : catalogue())
            if (e.dim() == sp.dim) sp.classes.push_back(e.name);
    sp.denominators.clear();
    for (auto& d : split(o.denominators)) {
        long v = std::stol(d);
        if (v < 1) throw UsageError("denominators must be positive");
        sp.denominators.push_back(v);
    }
    if (o.max_order) sp.max_order = o.max_order;
    sp.max_groups = o.max_groups;
    sp.jobs = o.jobs;
    sp.options = classify_options(o);
    SweepResult r = sweep(sp);
    if (o.format == "csv") {
        std::cout << "class,group_hash,order,torus_order,model,A,U,SL,beta_vanishes,criterion_agrees,error\n";
        for (auto& row : r.rows) {
            std::cout << csv_field(row.cls) << "," << row.group.hash() << "," << row.group.order() << ",";
            if (row.verdict) {
                const Verdict& v = *row.verdict;
                std::cout << v.torus_order << "," << v.model << "," << v.condition_A << "," << v.U << "," << v.SL << ","
                          << tri(v.beta_vanishes) << "," << tri(v.criterion_agrees) << ",\n";
            } else {
                std::cout << ",,,,,,," << csv_field(row.error) << "\n";
            }
        }
    } else {
        json rows = json::array();
        for (auto& row : r.rows) {
            json j{{"class", row.cls}, {"generators", to_json(row.group.generators())}};
            if (row.verdict) j["verdict"] = verdict_json(*row.verdict);
            else j["error"] = row.error;
            rows.push_back(j);
        }
        json out{{"rows", rows},
                 {"agreements", r.agreements},
                 {"disagreements", r.disagreements},
                 {"unchecked", r.unchecked},
                 {"errors", r.errors}};
        std::cout << out.dump(2) << "\n";
    }
    std::cerr << r.rows.size() << " groups, " << r.agreements << " agreements, " << r.disagreements
              << " disagreements, " << r.unchecked << " unchecked, " << r.errors << " errors\n";
    return 0;
}

int cmd_section6(const Options& o) {
    Family f = parse_family(o.family);
    Section6Report rep = reproduce_section6(f, o.n);
    json printed = json::array();
    for (auto& v : rep.printed) printed.push_back(to_json(v));
    json out{{"family", family_name(f)},
             {"n", rep.n},
             {"order", rep.order},
             {"sigma1", to_json(rep.sigma1)},
             {"sigma2", to_json(rep.sigma2)},
             {"stage1_matches_printed", rep.stage1_matches_printed},
             {"beta", to_json(rep.beta_printed_lift)},
             {"beta_canonical", to_json(rep.beta_canonical)},
             {"beta_matches_printed", rep.beta_matches_printed},
             {"lifts_same_class", rep.lifts_same_class},
             {"route_a_vanishes", rep.route_a_vanishes},
             {"beta_in_image", rep.beta_in_image},
             {"printed_generators_match", rep.printed_generators_match},
             {"printed_block", rep.printed_block},
             {"beta_in_intersection", rep.beta_in_intersection},
             {"printed_generators", printed},
             {"verdict", rep.nonvanishing ? "NonVanishing" : "Vanishes"}};
    std::cout << out.dump(2) << "\n";
    std::cerr << family_name(f) << " n=" << o.n << ": " << out["verdict"].get<std::string>() << "\n";
    return 0;
}

int cmd_selftest(const Options& o) {
    std::vector<int> ids = o.criteria.empty() ? acceptance_ids() : o.criteria;
    json out = json::array();
    bool all = true;
    for (int id : ids) {
        CriterionResult r = run_criterion(id, o.jobs > 0 ? o.jobs : 1);
        all &= r.passed;
        out.push_back(json{{"criterion", r.id}, {"name", r.name}, {"passed", r.passed}, {"details", r.details}});
        std::cerr << (r.passed ? "PASS" : "FAIL") << " criterion " << r.id << " (" << r.name << ") " << r.seconds
                  << " s\n";
    }
    std::cout << out.dump(2) << "\n";
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"equivariant geometry of toric threefolds and surfaces"};
    app.require_subcommand(1);
    Options o;

    auto with_group = [&](CLI::App* c, bool required) {
        auto* opt = c->add_option("--group", o.group, "group JSON file or catalogue name");
        if (required) opt->required();
    };
    auto with_model = [&](CLI::App* c) { c->add_option("--model", o.model, "model name, fan file or model JSON"); };
    auto with_caps = [&](CLI::App* c) {
        c->add_option("--max-order", o.max_order, "largest group order to build")->check(CLI::PositiveNumber);
    };

    auto* catalog = app.add_subcommand("catalog", "list the named groups");
    catalog->add_option("--name", o.name);
    auto* info = app.add_subcommand("group-info", "basic invariants of a group");
    with_group(info, true);
    with_caps(info);
    auto* mbuild = app.add_subcommand("model-build", "fan, Pic presentation and section of a model");
    with_model(mbuild);
    auto* mcheck = app.add_subcommand("model-check", "validate a model, optionally against a group");
    with_model(mcheck);
    with_group(mcheck, false);
    with_caps(mcheck);
    auto* fixed = app.add_subcommand("fixed-points", "fixed points on the invariant torus orbits");
    auto* conda = app.add_subcommand("condition-a", "fixed points of all abelian subgroups");
    auto* bcmd = app.add_subcommand("beta", "the obstruction class of a group on a model");
    for (auto* c : {fixed, conda, bcmd}) {
        with_group(c, true);
        with_model(c);
        with_caps(c);
    }
    bcmd->add_option("--beta-max", o.beta_max, "largest group order sent to the cochain computation");
    bcmd->add_option("--max-nonzeros", o.max_nonzeros, "cap on coboundary matrix nonzeros");
    bcmd->add_option("--time-budget", o.time_budget, "seconds allowed for the report");
    auto* cls = app.add_subcommand("classify", "unirationality and stable linearizability verdicts");
    with_group(cls, true);
    auto* sw = app.add_subcommand("sweep", "classify lifts of catalogue groups");
    sw->add_option("--dim", o.dim)->check(CLI::Range(2, 3));
    sw->add_option("--classes", o.classes, "comma separated catalogue names (default: all of the dimension)");
    sw->add_option("--denominators", o.denominators, "comma separated torus denominators");
    sw->add_option("--max-groups", o.max_groups);
    sw->add_option("--jobs", o.jobs)->check(CLI::NonNegativeNumber);
    sw->add_option("--format", o.format)->check(CLI::IsMember({"json", "csv"}));
    for (auto* c : {cls, sw}) {
        with_caps(c);
        c->add_option("--beta-max", o.beta_max, "largest Sylow subgroup sent to the cochain computation");
        c->add_flag("--second-model", o.second_model, "recompute (A) on a second invariant model");
        c->add_flag("--no-cross-check", o.no_cross_check, "skip the beta cross-check");
    }
    auto* s6 = app.add_subcommand("reproduce-section6", "the K9 families with cyclic torus part");
    s6->add_option("--family", o.family)->check(CLI::IsMember({"Q", "D", "SD"}));
    s6->add_option("--n", o.n);
    auto* self = app.add_subcommand("selftest", "run the acceptance criteria");
    self->add_option("--criterion", o.criteria, "criterion ids (default: all)");
    self->add_option("--jobs", o.jobs)->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (o.max_order) set_order_cap(o.max_order);
        if (*catalog) return cmd_catalog(o);
        if (*info) return cmd_group_info(o);
        if (*mbuild) return cmd_model_build(o);
        if (*mcheck) return cmd_model_check(o);
        if (*fixed) return cmd_fixed_points(o);
        if (*conda) return cmd_condition_a(o);
        if (*bcmd) return cmd_beta(o);
        if (*cls) return cmd_classify(o);
        if (*sw) return cmd_sweep(o);
        if (*s6) return cmd_section6(o);
        if (*self) return cmd_selftest(o);
    } catch (const CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return 3;
    } catch (const InconclusiveConjugacy& e) {
        std::cerr << "inconclusive: " << e.what() << "\n";
        return 3;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const BadParameters& e) {
        std::cerr << "bad parameters: " << e.what() << "\n";
        return 2;
    } catch (const DimensionMismatch& e) {
        std::cerr << "dimension mismatch: " << e.what() << "\n";
        return 2;
    } catch (const MalformedFan& e) {
        std::cerr << "malformed fan: " << e.what() << "\n";
        return 2;
    } catch (const FanNotInvariant& e) {
        std::cerr << "not invariant: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "bad JSON: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "bad input: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "bad input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
