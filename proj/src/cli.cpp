// SPDX-License-Identifier: Apache-2.0

#include "brouwer/cli.hpp"

#include "brouwer/catalog.hpp"
#include "brouwer/derivation.hpp"
#include "brouwer/drift.hpp"
#include "brouwer/fleeing.hpp"
#include "brouwer/logic.hpp"
#include "brouwer/reals.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

namespace brouwer {

using Json = nlohmann::ordered_json;

// --- config ---------------------------------------------------------------------

Config Config::parse(const std::string &text) {
    Config c;
    std::istringstream in(text);
    std::string line;
    std::size_t no = 0;
    while (std::getline(in, line)) {
        ++no;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        auto eq = line.find('=');
        auto strip = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r\"");
            auto e = s.find_last_not_of(" \t\r\"");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        if (strip(line).empty())
            continue;
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(no) + ": expected key=value");
        std::string key = strip(line.substr(0, eq));
        std::string value = strip(line.substr(eq + 1));
        std::uint64_t v = 0;
        try {
            std::size_t used = 0;
            if (value.empty() || value[0] < '0' || value[0] > '9')
                throw std::invalid_argument(value);
            v = std::stoull(value, &used);
            if (used != value.size())
                throw std::invalid_argument(value);
        } catch (const std::exception &) {
            throw std::invalid_argument("config line " + std::to_string(no) + ": '" + value +
                                        "' is not a non-negative integer");
        }
        if (v == 0 && key != "seed")
            throw std::invalid_argument("config line " + std::to_string(no) + ": " + key + " must be positive");
        if (key == "horizon")
            c.horizon = v;
        else if (key == "nodes")
            c.nodes = v;
        else if (key == "atoms")
            c.atoms = v;
        else if (key == "digits")
            c.digits = v;
        else if (key == "seed")
            c.seed = v;
        else
            throw std::invalid_argument("config line " + std::to_string(no) + ": unknown key '" + key + "'");
    }
    return c;
}

Config Config::load(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot read config " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

namespace {

// --- records --------------------------------------------------------------------

Json verdict_json(const Verdict &v) {
    Json j;
    j["value"] = std::string(to_string(v.value));
    j["horizon"] = v.horizon;
    j["witness"] = v.witness ? Json(*v.witness) : Json(nullptr);
    if (v.direction != Direction::None)
        j["direction"] = std::string(to_string(v.direction));
    return j;
}

Json prefix_json(const Prefix &p) {
    Json a = Json::array();
    for (const auto &x : p)
        a.push_back(x.get_str());
    return a;
}

Json sweep_json(const SweepResult &r) {
    Json j;
    j["schema"] = std::string(to_string(r.schema));
    j["text"] = schema_text(r.schema);
    j["bounds"] = {{"nodes", r.bounds.max_nodes},
                   {"atoms", r.bounds.max_atoms},
                   {"box", r.bounds.max_box_index},
                   {"depth", r.bounds.max_formula_depth}};
    j["valid"] = r.valid;
    j["expected_valid"] = expected_valid(r.schema);
    j["trees"] = r.trees;
    j["models"] = r.models;
    j["checks"] = r.checks;
    if (r.countermodel) {
        const auto &c = *r.countermodel;
        Json boxes = Json::array();
        for (auto b : c.boxes)
            boxes.push_back(b);
        j["countermodel"] = {{"id", c.id},
                             {"node", c.model.ids[c.node]},
                             {"phi", print(c.phi)},
                             {"boxes", boxes},
                             {"instance", print(c.instance)},
                             {"model", Json::parse(c.model.to_json())}};
    } else {
        j["countermodel"] = nullptr;
    }
    return j;
}

Json check_json(const std::string &name, const CheckResult &r) {
    Json j;
    j["script"] = name;
    j["verified"] = r.verified;
    if (r.verified) {
        j["conclusion"] = print(r.conclusion);
    } else {
        j["rejected_step"] = r.rejected_step;
        j["rejected_line"] = r.rejected_line;
        j["reason"] = r.reason;
    }
    Json rules = Json::object();
    for (const auto &[k, v] : r.rules_used)
        rules[k] = v;
    j["rules_used"] = rules;
    j["uses_cs5r"] = r.uses("CS5R-inst");
    j["warnings"] = r.warnings;
    j["flags"] = r.flags;
    return j;
}

Json ks_json(const KsReport &k) {
    Json steps = Json::array();
    for (const auto &s : k.steps) {
        Json j{{"index", s.index}, {"text", s.text}};
        j["needs"] = s.needs ? Json(std::string(to_string(*s.needs))) : Json(nullptr);
        if (s.needs)
            j["countermodel"] = s.countermodel;
        steps.push_back(j);
    }
    Json blocked = Json::array();
    for (auto b : k.blocked)
        blocked.push_back(std::string(to_string(b)));
    return {{"steps", steps}, {"blocked", blocked}};
}

/// Generic text rendering of a record.
void render(std::ostream &out, const Json &j, int indent) {
    std::string pad(static_cast<std::size_t>(indent), ' ');
    auto scalar = [](const Json &v) {
        if (v.is_string())
            return v.get<std::string>();
        if (v.is_null())
            return std::string("-");
        return v.dump();
    };
    auto flat = [&](const Json &a) {
        return a.is_array() && std::all_of(a.begin(), a.end(), [](const Json &x) { return x.is_primitive(); });
    };
    for (auto it = j.begin(); it != j.end(); ++it) {
        const Json &v = it.value();
        if (v.is_primitive()) {
            out << pad << it.key() << ": " << scalar(v) << "\n";
        } else if (flat(v)) {
            out << pad << it.key() << ":";
            for (const auto &x : v)
                out << " " << scalar(x);
            out << "\n";
        } else if (v.is_array()) {
            out << pad << it.key() << ":\n";
            for (const auto &x : v) {
                if (x.is_object()) {
                    out << pad << "  -\n";
                    render(out, x, indent + 4);
                } else {
                    out << pad << "  - " << x.dump() << "\n";
                }
            }
        } else {
            out << pad << it.key() << ":\n";
            render(out, v, indent + 2);
        }
    }
}

// --- helpers --------------------------------------------------------------------

struct TraceOpts {
    std::string file;
    std::string line;

    std::optional<EventTrace> get() const {
        if (!file.empty() && !line.empty())
            throw CLI::ValidationError("--trace and --trace-line are exclusive");
        if (!file.empty())
            return EventTrace::load(file);
        if (!line.empty())
            return EventTrace::parse(line);
        return std::nullopt;
    }
};

void add_trace(CLI::App *cmd, TraceOpts &t) {
    cmd->add_option("--trace", t.file, "event trace file (never | true:<k> | false:<k>)")->check(CLI::ExistingFile);
    cmd->add_option("--trace-line", t.line, "event trace given inline");
}

Point make_point(const std::string &spec, const std::optional<EventTrace> &trace) {
    Generator g = generator_from_spec(spec);
    if (g.is_process()) {
        if (!trace)
            throw CLI::ValidationError("generator '" + spec + "' is event-driven and needs --trace or --trace-line");
        return Point(std::move(g), *trace);
    }
    return Point(std::move(g));
}

std::vector<EventTrace> trace_cases(std::uint64_t k) {
    std::vector<EventTrace> cases{EventTrace::never()};
    for (std::uint64_t i = 1; i <= k; ++i)
        cases.push_back(EventTrace::proved_at(i));
    for (std::uint64_t i = 1; i <= k; ++i)
        cases.push_back(EventTrace::refuted_at(i));
    return cases;
}

Json terms_json(const CheckingRun &run) {
    Json t = Json::array();
    for (const auto &x : run.terms)
        t.push_back(x.str());
    return t;
}

struct Checks {
    Json list = Json::array();
    bool ok = true;
    void add(const std::string &name, bool pass) {
        list.push_back({{"check", name}, {"ok", pass}});
        ok = ok && pass;
    }
};

Json bundled_check(const std::string &name, Checks &checks, bool expect_verified = true) {
    const auto &b = bundled_script(name);
    Script s = parse_script(b.text, b.name);
    CheckResult r = check(s);
    Json j = check_json(name, r);
    checks.add(name + (expect_verified ? " verified" : " rejected"), r.verified == expect_verified);
    if (r.verified) {
        auto m = mutation_test(s);
        auto sem = semantic_check(s, r, 3);
        j["mutants"] = m.mutants;
        j["mutants_rejected"] = m.rejected;
        j["semantic"] = {{"max_nodes", sem.max_nodes}, {"models", sem.models}, {"satisfying", sem.satisfying},
                         {"ok", sem.ok()}};
        checks.add(name + " single-step mutants rejected", m.ok());
        checks.add(name + " conclusion forced in every satisfying model", sem.ok());
    }
    return j;
}

// --- replays --------------------------------------------------------------------

Json replay_vienna(std::uint64_t horizon, Checks &checks) {
    Json cases = Json::array();
    Family a = vienna_family();
    for (const auto &t : trace_cases(3)) {
        auto run = vienna_sequence(a, t, 6);
        Point e = vienna_e(t);
        auto below_half = lt_rational(e, 1, 2, horizon);
        cases.push_back({{"trace", t.str()},
                         {"terms", terms_json(run)},
                         {"limit", run.limit_descriptor},
                         {"e_below_half", verdict_json(below_half)}});
        bool resolved = t.resolution != Resolution::Never;
        checks.add("e < 1/2 under " + t.str() + (resolved ? " holds" : " unknown"),
                   resolved ? below_half.holds() : below_half.unknown());
        checks.add("limit under " + t.str(), resolved ? run.limit_descriptor != "1/2" : run.limit_descriptor == "1/2");
    }
    auto crit = critical_number(run_property(9, 6), 1000);
    checks.add("fleeing property run:9x6 has a witness below 1000", crit.found.has_value());
    Json j;
    j["cases"] = cases;
    j["fleeing"] = {{"property", crit.property}, {"critical", crit.str()}};
    j["script"] = bundled_check("vienna_dense", checks);
    return j;
}

Json drift_cases(const Drift &d, CheckingKind kind, std::uint64_t horizon, Checks &checks) {
    Json cases = Json::array();
    Point kernel(centered_generator("kernel", d.kernel));
    for (const auto &t : trace_cases(3)) {
        auto run = checking_sequence(d, kind, t, 6);
        auto cls = rationality_descriptor(d, kind, t);
        Point x(flatten(d, kind), t);
        auto apart = apart_at(kernel, x, horizon);
        cases.push_back({{"trace", t.str()},
                         {"terms", terms_json(run)},
                         {"limit", run.limit_descriptor},
                         {"rationality", std::string(to_string(cls))},
                         {"kernel_below", verdict_json(apart)}});
        bool moves = t.resolution == Resolution::Proved ||
                     (t.resolution == Resolution::Refuted && kind != CheckingKind::Conditional);
        checks.add("limit class under " + t.str(),
                   moves ? cls == LimitClass::Rational : cls == LimitClass::KernelClass);
        checks.add("kernel < checking point under " + t.str() + (moves ? " holds" : " unknown"),
                   moves ? apart.holds() && apart.direction == Direction::FirstLess : apart.unknown());
    }
    return cases;
}

Json replay_drift(std::uint64_t horizon, Checks &checks) {
    Drift d = rational_right_drift();
    Json j;
    j["drift"] = d.name;
    j["kind"] = "direct";
    j["cases"] = drift_cases(d, CheckingKind::Direct, horizon, checks);
    j["script"] = bundled_check("drift_direct", checks);
    checks.add("drift_direct verifies without CS5R", !j["script"]["uses_cs5r"].get<bool>());
    return j;
}

Json replay_ks(std::uint64_t horizon, Checks &checks) {
    Drift d = rational_right_drift();
    Json j;
    j["drift"] = d.name;
    j["kind"] = "conditional";
    j["cases"] = drift_cases(d, CheckingKind::Conditional, horizon, checks);
    j["script"] = bundled_check("conditional_ks", checks);
    checks.add("conditional_ks verifies without CS5R", !j["script"]["uses_cs5r"].get<bool>());
    j["literal"] = bundled_check("conditional_ks_literal", checks, false);
    auto ks = ks_prerequisite_report();
    j["ks_prerequisites"] = ks_json(ks);
    checks.add("KS skeleton has exactly two blocked rules (CS4, CS5)",
               ks.blocked == std::vector<Schema>{Schema::CS4, Schema::CS5});
    return j;
}

Json replay_cambridge(std::uint64_t horizon, Checks &checks) {
    Json cases = Json::array();
    struct Case {
        std::string property;
        bool witness;
    };
    for (const auto &c : {Case{"threshold:3", true}, Case{"run:9x6", true}, Case{"empty", false}}) {
        auto prop = property_from_spec(c.property);
        auto crit = critical_number(prop, 1000);
        std::uint64_t h = crit.found ? std::max<std::uint64_t>(horizon, *crit.found + 8) : horizon;
        Point p(generator_from_spec("cambridge-c:" + c.property));
        auto positive = gt_rational(p, 0, 1, h);
        cases.push_back({{"property", c.property}, {"critical", crit.str()}, {"c_above_zero", verdict_json(positive)}});
        checks.add("c > 0 for " + c.property + (c.witness ? " holds" : " unknown"),
                   c.witness ? positive.holds() : positive.unknown());
    }
    Json j;
    j["cases"] = cases;
    j["script"] = bundled_check("cambridge_reduced", checks);
    return j;
}

// --- dispatch -------------------------------------------------------------------

struct Ctx {
    std::ostream &out;
    std::ostream &err;
    Config config;
    bool json = false;
    std::uint64_t seed = 1;

    void emit(Json record) const {
        record["seed"] = seed;
        if (json)
            out << record.dump(2) << "\n";
        else
            render(out, record, 0);
    }
};

std::string find_config(const std::vector<std::string> &args) {
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size())
            return args[i + 1];
        if (args[i].rfind("--config=", 0) == 0)
            return args[i].substr(9);
    }
    return std::filesystem::exists("brouwer.toml") ? "brouwer.toml" : "";
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    Ctx ctx{out, err, {}};
    try {
        if (auto path = find_config(args); !path.empty())
            ctx.config = Config::load(path);
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return ExitUsage;
    }
    std::unique_ptr<DigitOracle> capped;
    if (ctx.config.digits > 0 && ctx.config.digits < DigitOracle::shared().limit())
        capped = std::make_unique<DigitOracle>(ctx.config.digits);
    DigitOracle &oracle = capped ? *capped : DigitOracle::shared();
    ctx.seed = ctx.config.seed;

    CLI::App app{"Choice-sequence constructions, stage semantics and proof-script checking", "brouwer"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string config_path;
    app.add_option("--config", config_path, "key=value settings file (default ./brouwer.toml)");
    app.add_flag("--json", ctx.json, "emit JSON");
    app.add_option("--seed", ctx.seed, "seed for sampled checks, recorded in the output");
    std::uint64_t horizon = ctx.config.horizon;
    int code = ExitOk;

    // pi
    auto *pi = app.add_subcommand("pi", "decimal digits of pi");
    pi->require_subcommand(1);
    std::size_t ndigits = 0;
    auto *pi_digits = pi->add_subcommand("digits", "first N decimals after the point");
    pi_digits->add_option("N", ndigits, "number of digits")->required()->check(CLI::PositiveNumber);
    auto *pi_find = pi->add_subcommand("find", "least position of a digit pattern or run");
    std::string pattern, run_spec;
    std::uint64_t limit = 1000;
    pi_find->add_option("--pattern", pattern, "digit string");
    pi_find->add_option("--run", run_spec, "<digit>x<length>, e.g. 9x6");
    pi_find->add_option("--limit", limit, "search horizon")->check(CLI::PositiveNumber);
    auto *pi_self = pi->add_subcommand("selftest", "cross-check the three digit algorithms");
    std::size_t self_n = 1000;
    pi_self->add_option("--digits", self_n, "digits to compare")->check(CLI::PositiveNumber);

    // fleeing
    auto *fl = app.add_subcommand("fleeing", "decidable properties and critical numbers");
    fl->require_subcommand(1);
    auto *fl_search = fl->add_subcommand("search", "least witness of a property");
    std::string prop_spec = "run:9x6";
    fl_search->add_option("--property", prop_spec, "run:<d>x<L> | pattern:<digits> | threshold:<k> | singleton:<k> | empty");
    fl_search->add_option("--horizon", limit, "search horizon")->check(CLI::PositiveNumber);
    auto *fl_list = fl->add_subcommand("list", "list generator specs");

    // real
    auto *real = app.add_subcommand("real", "points and their relations at a horizon");
    real->require_subcommand(1);
    auto *real_cmp = real->add_subcommand("cmp", "order, apartness and coincidence verdicts");
    std::string lhs, rhs;
    TraceOpts trace;
    real_cmp->add_option("--lhs", lhs, "generator spec")->required();
    real_cmp->add_option("--rhs", rhs, "generator spec")->required();
    real_cmp->add_option("--horizon", horizon, "horizon")->check(CLI::PositiveNumber);
    add_trace(real_cmp, trace);
    auto *real_emit = real->add_subcommand("emit", "prefix and lambda-intervals of a point");
    std::string gen;
    std::size_t nterms = 8;
    real_emit->add_option("--gen", gen, "generator spec")->required();
    real_emit->add_option("--terms", nterms, "number of terms")->check(CLI::PositiveNumber);
    add_trace(real_emit, trace);
    auto *real_cont = real->add_subcommand("continuity", "continuity modulus and sampled soundness");
    std::string map_name = "identity";
    std::uint64_t m0 = 3;
    std::size_t samples = 100;
    std::string cont_at = "zero";
    real_cont->add_option("--map", map_name, "identity | negation | delay");
    real_cont->add_option("--at", cont_at, "generator spec of the argument");
    real_cont->add_option("--m0", m0, "output precision")->check(CLI::PositiveNumber);
    real_cont->add_option("--samples", samples, "number of sampled neighbours");
    real_cont->add_option("--horizon", horizon, "horizon")->check(CLI::PositiveNumber);

    // drift
    auto *dr = app.add_subcommand("drift", "checking sequences of drifts");
    dr->require_subcommand(1);
    auto *dr_run = dr->add_subcommand("run", "checking sequence under a trace");
    std::string kind = "direct", drift_name = "rational-right";
    dr_run->add_option("--kind", kind, "direct | osc | cond");
    dr_run->add_option("--drift", drift_name, "rational-right | two-winged-mixed | berlin");
    dr_run->add_option("--terms", nterms, "number of terms")->check(CLI::PositiveNumber);
    add_trace(dr_run, trace);
    auto *dr_val = dr->add_subcommand("validate", "kernel, wings and apartness of the counting numbers");
    std::uint64_t upto = 8;
    dr_val->add_option("--drift", drift_name, "bundled drift");
    dr_val->add_option("--upto", upto, "counting numbers to check")->check(CLI::PositiveNumber);
    dr_val->add_option("--horizon", horizon, "horizon")->check(CLI::PositiveNumber);

    // logic
    auto *lg = app.add_subcommand("logic", "stage trees, forcing and validity sweeps");
    lg->require_subcommand(1);
    auto *lg_eval = lg->add_subcommand("eval", "forcing at a node");
    std::string model_path, at_node, formula_text;
    lg_eval->add_option("--model", model_path, "model JSON")->required()->check(CLI::ExistingFile);
    lg_eval->add_option("--at", at_node, "node id")->required();
    lg_eval->add_option("--formula", formula_text, "formula")->required();
    auto *lg_sweep = lg->add_subcommand("sweep", "exhaustive validity check of a schema");
    std::string schema_name;
    SweepBounds bounds;
    bounds.max_nodes = ctx.config.nodes;
    bounds.max_atoms = ctx.config.atoms;
    lg_sweep->add_option("--schema", schema_name, "ic1 | ic2 | ic3 | md | cs4 | cs5")->required();
    lg_sweep->add_option("--nodes", bounds.max_nodes, "max tree size")->check(CLI::PositiveNumber);
    lg_sweep->add_option("--atoms", bounds.max_atoms, "atoms")->check(CLI::PositiveNumber);
    lg_sweep->add_option("--box", bounds.max_box_index, "max stage index")->check(CLI::PositiveNumber);
    lg_sweep->add_option("--depth", bounds.max_formula_depth, "max formula depth");
    auto *lg_suite = lg->add_subcommand("suite", "all six principles at the given bounds");
    lg_suite->add_option("--nodes", bounds.max_nodes, "max tree size")->check(CLI::PositiveNumber);
    lg_suite->add_option("--atoms", bounds.max_atoms, "atoms")->check(CLI::PositiveNumber);

    // derive
    auto *dv = app.add_subcommand("derive", "proof-script checking");
    dv->require_subcommand(1);
    auto *dv_check = dv->add_subcommand("check", "check a script file or a bundled script");
    std::string script_path, bundled;
    std::size_t semantic_nodes = 0;
    bool mutate = false;
    dv_check->add_option("file", script_path, "script file")->check(CLI::ExistingFile);
    dv_check->add_option("--bundled", bundled, "bundled script name");
    dv_check->add_option("--semantic", semantic_nodes, "also evaluate over stage trees up to this size");
    dv_check->add_flag("--mutate", mutate, "also check that every single-step corruption is rejected");
    auto *dv_dump = dv->add_subcommand("dump", "print a bundled script");
    dv_dump->add_option("name", bundled, "bundled script name")->required();
    auto *dv_list = dv->add_subcommand("list", "list bundled scripts");
    auto *dv_ks = dv->add_subcommand("ks", "prerequisites of the sequence-existence schema");

    // replay
    auto *rp = app.add_subcommand("replay", "canned pipelines: vienna | drift | ks | cambridge");
    std::string pipeline;
    rp->add_option("pipeline", pipeline, "pipeline name")
        ->required()
        ->check(CLI::IsMember({"vienna", "drift", "ks", "cambridge"}));
    rp->add_option("--horizon", horizon, "horizon")->check(CLI::PositiveNumber);

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return ExitOk;
    } catch (const CLI::CallForAllHelp &e) {
        out << app.help("", CLI::AppFormatMode::All);
        return ExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return ExitUsage;
    }

    try {
        if (pi_digits->parsed()) {
            auto d = oracle.digits(ndigits);
            if (ctx.json)
                ctx.emit({{"command", "pi digits"}, {"n", ndigits}, {"digits", d}});
            else
                out << d << "\n";
        } else if (pi_find->parsed()) {
            if (pattern.empty() == run_spec.empty())
                throw CLI::ValidationError("give exactly one of --pattern and --run");
            auto p = property_from_spec(pattern.empty() ? "run:" + run_spec : "pattern:" + pattern, oracle);
            auto r = critical_number(p, limit);
            if (ctx.json)
                ctx.emit({{"command", "pi find"}, {"property", r.property}, {"limit", limit},
                          {"position", r.found ? Json(*r.found) : Json(nullptr)}, {"result", r.str()}});
            else
                out << r.str() << "\n";
        } else if (pi_self->parsed()) {
            auto t = oracle.self_test(self_n);
            ctx.emit({{"command", "pi selftest"}, {"digits", t.digits}, {"spigot_agrees", t.spigot_agrees},
                      {"machin_agrees", t.machin_agrees}});
            code = t.ok() ? ExitOk : ExitMismatch;
        } else if (fl_search->parsed()) {
            auto r = critical_number(property_from_spec(prop_spec, oracle), limit);
            ctx.emit({{"command", "fleeing search"}, {"property", r.property}, {"horizon", r.horizon},
                      {"critical", r.found ? Json(*r.found) : Json(nullptr)}, {"result", r.str()}});
        } else if (fl_list->parsed()) {
            Json specs = Json::array();
            for (const auto &s : generator_specs())
                specs.push_back({{"spec", s.pattern}, {"description", s.description}, {"needs_trace", s.needs_trace}});
            ctx.emit({{"command", "fleeing list"}, {"generators", specs}});
        } else if (real_cmp->parsed()) {
            auto t = trace.get();
            Point a = make_point(lhs, t), b = make_point(rhs, t);
            Json j{{"command", "real cmp"}, {"lhs", lhs}, {"rhs", rhs}, {"horizon", horizon}};
            j["trace"] = t ? Json(t->str()) : Json(nullptr);
            j["lhs_less"] = verdict_json(lt_at(a, b, horizon));
            j["rhs_less"] = verdict_json(lt_at(b, a, horizon));
            j["apart"] = verdict_json(apart_at(a, b, horizon));
            j["coincide"] = verdict_json(coincide_refute(a, b, horizon));
            ctx.emit(j);
        } else if (real_emit->parsed()) {
            auto t = trace.get();
            Point a = make_point(gen, t);
            Prefix p = a.prefix(nterms);
            Json iv = Json::array();
            for (std::size_t i = 0; i < p.size(); ++i)
                iv.push_back(lambda_interval(i + 1, p[i]).str());
            Json j{{"command", "real emit"}, {"gen", gen}, {"name", a.name()}};
            j["trace"] = t ? Json(t->str()) : Json(nullptr);
            j["terms"] = prefix_json(p);
            j["intervals"] = iv;
            ctx.emit(j);
        } else if (real_cont->parsed()) {
            PrefixMap f = map_name == "identity"   ? identity_map()
                          : map_name == "negation" ? negation_map()
                          : map_name == "delay"    ? delay_map()
                                                   : throw CLI::ValidationError("unknown map '" + map_name + "'");
            Point a = make_point(cont_at, std::nullopt);
            auto s = continuity_sampling(f, a, m0, samples, ctx.seed, horizon);
            Json j{{"command", "real continuity"}, {"map", f.name}, {"at", cont_at}, {"m0", m0}};
            j["found"] = s.modulus.found;
            j["n0"] = s.modulus.found ? Json(s.modulus.n0) : Json(nullptr);
            j["q"] = s.modulus.found ? Json(s.modulus.q.str()) : Json(nullptr);
            j["samples"] = s.samples;
            j["passed"] = s.passed;
            ctx.emit(j);
            code = s.ok() ? ExitOk : ExitMismatch;
        } else if (dr_run->parsed()) {
            auto t = trace.get().value_or(EventTrace::never());
            Drift d = bundled_drift(drift_name);
            auto k = parse_checking_kind(kind);
            auto run = checking_sequence(d, k, t, nterms);
            Json j{{"command", "drift run"}, {"drift", d.name}, {"kind", std::string(to_string(k))},
                   {"trace", t.str()}};
            j["terms"] = terms_json(run);
            j["limit"] = run.limit_descriptor;
            j["rationality"] = std::string(to_string(rationality_descriptor(d, k, t)));
            ctx.emit(j);
        } else if (dr_val->parsed()) {
            auto v = validate_drift(bundled_drift(drift_name), upto, horizon);
            ctx.emit({{"command", "drift validate"}, {"drift", drift_name}, {"upto", v.upto}, {"horizon", v.horizon},
                      {"ok", v.ok()}, {"failures", v.failures}});
            code = v.ok() ? ExitOk : ExitMismatch;
        } else if (lg_eval->parsed()) {
            StageTree m = StageTree::load(model_path);
            FormulaPtr f = parse_formula(formula_text);
            int w = m.index_of(at_node);
            ctx.emit({{"command", "logic eval"}, {"at", at_node}, {"formula", print(f)}, {"forces", forces(m, w, *f)}});
        } else if (lg_sweep->parsed()) {
            Schema s = parse_schema(schema_name);
            auto r = validity_sweep(s, bounds);
            Json j{{"command", "logic sweep"}};
            j.update(sweep_json(r));
            ctx.emit(j);
            code = r.valid == expected_valid(s) ? ExitOk : ExitMismatch;
        } else if (lg_suite->parsed()) {
            auto rep = principle_suite(bounds);
            Json entries = Json::array();
            for (const auto &e : rep.entries)
                entries.push_back(sweep_json(e.result));
            ctx.emit({{"command", "logic suite"}, {"ok", rep.ok()}, {"entries", entries},
                      {"restricted_cs5", rep.restricted_cs5_note}});
            code = rep.ok() ? ExitOk : ExitMismatch;
        } else if (dv_check->parsed()) {
            if (script_path.empty() == bundled.empty())
                throw CLI::ValidationError("give a script file or --bundled <name>");
            Script s = bundled.empty() ? load_script(script_path)
                                       : parse_script(bundled_script(bundled).text, bundled);
            auto r = check(s);
            Json j{{"command", "derive check"}};
            j.update(check_json(s.name, r));
            bool good = r.verified;
            if (r.verified && semantic_nodes > 0) {
                auto sem = semantic_check(s, r, semantic_nodes);
                j["semantic"] = {{"max_nodes", sem.max_nodes}, {"models", sem.models},
                                 {"satisfying", sem.satisfying}, {"ok", sem.ok()}};
                if (sem.counterexample)
                    j["semantic"]["counterexample"] = *sem.counterexample;
                good = good && sem.ok();
            }
            if (r.verified && mutate) {
                auto m = mutation_test(s);
                j["mutants"] = m.mutants;
                j["mutants_rejected"] = m.rejected;
                j["survivors"] = m.survivors;
                good = good && m.ok();
            }
            ctx.emit(j);
            code = good ? ExitOk : ExitMismatch;
        } else if (dv_dump->parsed()) {
            out << bundled_script(bundled).text;
        } else if (dv_list->parsed()) {
            Json list = Json::array();
            for (const auto &b : bundled_scripts())
                list.push_back({{"name", b.name}, {"summary", b.summary}});
            const auto &lit = bundled_script("conditional_ks_literal");
            list.push_back({{"name", lit.name}, {"summary", lit.summary}});
            ctx.emit({{"command", "derive list"}, {"scripts", list}});
        } else if (dv_ks->parsed()) {
            auto ks = ks_prerequisite_report();
            if (ctx.json) {
                Json j{{"command", "derive ks"}};
                j.update(ks_json(ks));
                ctx.emit(j);
            } else {
                out << ks.str();
            }
        } else if (rp->parsed()) {
            Checks checks;
            Json body = pipeline == "vienna"  ? replay_vienna(horizon, checks)
                        : pipeline == "drift" ? replay_drift(horizon, checks)
                        : pipeline == "ks"    ? replay_ks(horizon, checks)
                                              : replay_cambridge(horizon, checks);
            Json j{{"command", "replay"}, {"pipeline", pipeline}, {"horizon", horizon}};
            j.update(body);
            j["checks"] = checks.list;
            j["ok"] = checks.ok;
            ctx.emit(j);
            code = checks.ok ? ExitOk : ExitMismatch;
        }
    } catch (const ResourceLimit &e) {
        err << "refused: " << e.what() << "\n";
        return ExitRefused;
    } catch (const ResourceRefusal &e) {
        err << "refused: " << e.what() << "\n";
        return ExitRefused;
    } catch (const CLI::Error &e) {
        err << "error: " << e.what() << "\n";
        return ExitUsage;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return ExitUsage;
    }
    return code;
}

} // namespace brouwer
