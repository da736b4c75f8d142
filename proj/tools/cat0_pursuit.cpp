// Command-line front end: scenario-driven experiments writing summary.json,
// CSV traces and plot.svg into the output directory.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cat0/scenario.hpp"
#include "cat0/suite.hpp"
#include "cat0/svg.hpp"

namespace fs = std::filesystem;
using namespace cat0;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;

struct Globals {
    std::string scenario;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::vector<std::string> sets;
    unsigned threads = 0;
    std::string from;
    std::string to;
};

struct Run {
    Scenario sc;
    PolygonalDomain dom;
    fs::path out;
    unsigned threads;
};

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    f << content;
}

void write_summary(const Run& r, json summary) {
    summary["scenario"] = r.sc.name;
    write_file(r.out / "summary.json", summary.dump(2) + "\n");
}

bool any_failed(const json& checks) {
    for (const auto& c : checks)
        if (c.is_object() && c.value("status", "") == "FAIL") return true;
    return false;
}

std::string sanitize(const std::string& s) {
    std::string o;
    for (char c : s) o += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
    while (!o.empty() && o.back() == '_') o.pop_back();
    return o;
}

double intrinsic_diameter_of(const PolygonalDomain& d) { return intrinsic_diameter(d, 3); }

int cmd_validate(Run& r) {
    const auto& d = r.dom;
    json summary = {{"command", "validate"},
                    {"domain", to_json(d)},
                    {"report", to_json(d.report())},
                    {"curvature_scale", d.curvature_scale()},
                    {"closeness_threshold", d.closeness_threshold()},
                    {"intrinsic_diameter", intrinsic_diameter_of(d)}};
    write_summary(r, summary);
    write_file(r.out / "plot.svg", emit_plot(d, {r.sc.name, {}, {}}));
    return kExitOk;
}

int cmd_geodesic(Run& r) {
    const auto& d = r.dom;
    const auto g = geodesic(d, r.sc.geodesic.from, r.sc.geodesic.to);
    std::vector<Vec2> pts;
    const int samples = 256;
    for (int i = 0; i <= samples; ++i) pts.push_back(g.point_at(g.length() * i / samples));
    json summary = {{"command", "geodesic"},
                    {"from", to_json(r.sc.geodesic.from)},
                    {"to", to_json(r.sc.geodesic.to)},
                    {"mode", to_string(d.mode())},
                    {"geodesic", to_json(g)},
                    {"length", g.length()},
                    {"euclidean", distance(r.sc.geodesic.from, r.sc.geodesic.to)}};
    write_summary(r, summary);
    PlotArtifact art{r.sc.name + " geodesic", {{"geodesic", "#c0392b", pts}},
                     {{"from", "#2c3e50", r.sc.geodesic.from, 0.0}, {"to", "#27ae60", r.sc.geodesic.to, 0.0}}};
    write_file(r.out / "plot.svg", emit_plot(d, art));
    return kExitOk;
}

EvaderSpec to_spec(const EvaderParams& e, std::uint64_t scenario_seed) {
    EvaderSpec s;
    s.kind = evader_kind_from_string(e.kind);
    s.waypoints = e.waypoints;
    s.seed = e.seed.value_or(scenario_seed);
    s.turn_rate = e.turn_rate;
    s.offset_steps = e.offset_steps;
    s.clockwise = e.clockwise ? 1 : 0;
    return s;
}

int cmd_pursue(Run& r) {
    const auto& d = r.dom;
    const auto& p = r.sc.pursuit;
    const double diam = intrinsic_diameter_of(d);
    const auto cb = capture_time_bound(diam, p.epsilon);
    PursuitOptions opt;
    opt.dt = p.dt;
    opt.epsilon = p.epsilon;
    opt.t_max = p.t_max.value_or(cb.t_c);

    static const char* palette[] = {"#2980b9", "#8e44ad", "#16a085", "#d35400", "#7f8c8d"};
    PlotArtifact art{r.sc.name + " pursuit", {}, {}};
    json runs = json::array();
    bool failed = false;
    bool all_captured = true;
    double worst_capture = 0.0;
    double worst_tau = 0.0;
    json merged = json::object();  // per check: worst status over runs
    for (std::size_t i = 0; i < p.evaders.size(); ++i) {
        const auto spec = to_spec(p.evaders[i], r.sc.seed);
        const auto tr = simulate_pursuit(d, p.lion, p.man, spec, opt);
        const auto fv = first_variation_check(tr, d);
        const auto cv = curvature_bound_check(tr, p.epsilon, diam);
        CheckReport cap{"capture"};
        cap.status = tr.captured_at && (cb.epsilon_too_large || *tr.captured_at <= cb.t_c) ? CheckStatus::pass : CheckStatus::fail;
        cap.margin = tr.captured_at ? cb.t_c - *tr.captured_at : -1.0;
        cap.details = {{"captured_at", tr.captured_at ? json(*tr.captured_at) : json(nullptr)}, {"t_c", cb.t_c}};
        json checks = {{"capture", to_json(cap)}, {"first_variation", to_json(fv)}, {"curvature_bound", to_json(cv)}};
        failed = failed || any_failed(checks);
        for (const auto& [name, c] : checks.items()) {
            const std::string st = c["status"];
            if (!merged.contains(name) || st == "FAIL" || (st == "PASS" && merged[name] == "NOT-APPLICABLE")) merged[name] = st;
        }
        const double tau = total_curvature(tr);
        worst_tau = std::max(worst_tau, tau);
        if (tr.captured_at) worst_capture = std::max(worst_capture, *tr.captured_at);
        else all_captured = false;

        const std::string csv = p.evaders.size() == 1 ? "trace.csv" : "trace_" + std::to_string(i) + "_" + sanitize(spec.label()) + ".csv";
        std::ostringstream os;
        write_pursuit_csv(os, tr);
        write_file(r.out / csv, os.str());
        runs.push_back({{"evader", spec.label()},
                        {"captured_at", tr.captured_at ? json(*tr.captured_at) : json(nullptr)},
                        {"tau_total", tau},
                        {"steps", tr.samples.size()},
                        {"max_monotone_excess", tr.max_monotone_excess},
                        {"csv", csv},
                        {"checks", checks}});

        std::vector<Vec2> xs, ys;
        for (const auto& s : tr.samples) {
            xs.push_back(s.x);
            ys.push_back(s.y);
        }
        const std::string color = palette[i % 5];
        art.paths.push_back({"lion vs " + spec.label(), "#c0392b", xs});
        art.paths.push_back({"man (" + spec.label() + ")", color, ys});
        if (tr.captured_at) art.markers.push_back({"capture " + spec.label(), color, tr.samples.back().x, p.epsilon / 2.0});
    }
    json summary = {{"command", "pursue"},
                    {"captured_at", all_captured ? json(worst_capture) : json(nullptr)},
                    {"t_c", cb.t_c},
                    {"capture_bound", to_json(cb)},
                    {"tau_total", worst_tau},
                    {"checks", merged},
                    {"dt", p.dt},
                    {"epsilon", p.epsilon},
                    {"runs", runs}};
    write_summary(r, summary);
    write_file(r.out / "plot.svg", emit_plot(d, art));
    return failed ? kExitCheckFailed : kExitOk;
}

int cmd_couple(Run& r) {
    const auto& d = r.dom;
    const auto& c = r.sc.coupling;
    const CouplingStrategy strat{coupling_kind_from_string(c.strategy), c.theta};
    const BrownianDriver drv(r.sc.seed, c.dt);
    CoupledOptions opt;
    opt.drift = c.drift;
    const auto path = simulate_coupled(d, c.x0, c.y0, strat, drv, c.steps, opt);
    double id_err = 0.0, min_sep = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < path.X.size(); ++k) {
        id_err = std::max(id_err, strat.step(path.X[k], path.Y[k]).identity_error());
        min_sep = std::min(min_sep, distance(path.X[k], path.Y[k]));
    }
    CheckReport ident{"coupling_identity"};
    ident.status = id_err <= 1e-12 ? CheckStatus::pass : CheckStatus::fail;
    ident.margin = 1e-12 - id_err;
    ident.details = {{"max_error", id_err}};
    std::ostringstream os;
    write_coupled_csv(os, d, path);
    write_file(r.out / "coupled.csv", os.str());
    json summary = {{"command", "couple"},
                    {"strategy", strat.label()},
                    {"interpretive", strat.interpretive()},
                    {"dt", c.dt},
                    {"steps", c.steps},
                    {"drift", c.drift},
                    {"final_X", to_json(path.X.back())},
                    {"final_Y", to_json(path.Y.back())},
                    {"final_intrinsic_separation", intrinsic_distance(d, path.X.back(), path.Y.back())},
                    {"min_euclidean_separation", min_sep},
                    {"LX", path.LX.back()},
                    {"LY", path.LY.back()},
                    {"checks", {{"coupling_identity", to_json(ident)}}}};
    write_summary(r, summary);
    PlotArtifact art{r.sc.name + " coupled paths", {{"X", "#c0392b", path.X}, {"Y", "#2980b9", path.Y}}, {}};
    write_file(r.out / "plot.svg", emit_plot(d, art));
    return ident.failed() ? kExitCheckFailed : kExitOk;
}

int cmd_probe(Run& r) {
    const auto& d = r.dom;
    const auto& p = r.sc.probe;
    const double diam = intrinsic_diameter_of(d);
    ShynessOptions o;
    o.epsilon = p.epsilon;
    o.t1 = p.t1.value_or(10.0 * diam * diam);
    o.trials = p.trials;
    o.windows = p.windows;
    o.dt = p.dt;
    o.base_seed = r.sc.seed;
    o.threads = r.threads;
    json reports = json::array(), checks = json::object();
    bool failed = false;
    for (const auto& name : p.strategies) {
        const CouplingStrategy strat{coupling_kind_from_string(name)};
        const auto rep = shyness_probe(d, p.x0, p.y0, strat, o);
        reports.push_back(to_json(rep));
        CheckReport c{"non_shyness_" + name};
        int min_window = rep.trials;
        for (int h : rep.window_hits) min_window = std::min(min_window, h);
        c.status = rep.hits >= 1 && min_window >= 1 ? CheckStatus::pass : CheckStatus::fail;
        c.margin = std::min(rep.hits, min_window);
        c.details = {{"hits", rep.hits}, {"min_window_hits", min_window}};
        failed = failed || c.failed();
        checks[name] = to_json(c);
    }
    json summary = {{"command", "probe"},     {"epsilon", o.epsilon}, {"t1", o.t1},
                    {"intrinsic_diameter", diam}, {"reports", reports}, {"checks", checks}};
    write_summary(r, summary);
    PlotArtifact art{r.sc.name + " probe starts", {}, {{"X start", "#c0392b", p.x0, 0.0}, {"Y start", "#2980b9", p.y0, 0.0}}};
    write_file(r.out / "plot.svg", emit_plot(d, art));
    return failed ? kExitCheckFailed : kExitOk;
}

int cmd_rescale(Run& r) {
    const auto& d = r.dom;
    const auto& p = r.sc.rescale;
    const CouplingStrategy strat{coupling_kind_from_string(p.strategy)};
    RescaledOptions o;
    o.dt = p.dt;
    o.t_horizon = p.t_horizon;
    std::vector<std::uint64_t> seeds = p.seeds.empty() ? std::vector<std::uint64_t>{r.sc.seed} : p.seeds;
    json tables = json::array();
    bool failed = false;
    int passed = 0, inversions = 0;
    for (auto seed : seeds) {
        const auto t = rescaled_convergence_experiment(d, p.x0, p.y0, strat, p.n_list, seed, o);
        failed = failed || !t.pass;
        passed += t.pass;
        inversions += t.inversions;
        tables.push_back(to_json(t));
    }
    json summary = {{"command", "rescale"},
                    {"tables", tables},
                    {"checks",
                     {{"monotone_deviation",
                       {{"name", "monotone_deviation"},
                        {"status", failed ? "FAIL" : "PASS"},
                        {"margin", passed - static_cast<int>(seeds.size())},
                        {"details", {{"seeds", seeds.size()}, {"passed", passed}, {"inversions", inversions}}}}}}}};
    write_summary(r, summary);
    PlotArtifact art{r.sc.name + " rescaled starts", {}, {{"X start", "#c0392b", p.x0, 0.0}, {"Y start", "#2980b9", p.y0, 0.0}}};
    write_file(r.out / "plot.svg", emit_plot(d, art));
    return failed ? kExitCheckFailed : kExitOk;
}

int cmd_verify(Run& r) {
    const auto& v = r.sc.verify;
    SuiteOptions o;
    o.triangles = v.triangles;
    o.grid_n = v.grid_n;
    o.gauss_pairs = v.gauss_pairs;
    o.close_pairs = v.close_pairs;
    o.lipschitz_pairs = v.lipschitz_pairs;
    o.taut_pairs = v.pairs;
    o.seed = r.sc.seed;
    const auto reps = run_verify_suite(r.dom, o);
    json checks = json::object();
    for (const auto& c : reps) checks[c.name] = to_json(c);
    const bool failed = any_failed(checks);
    write_summary(r, {{"command", "verify"}, {"mode", to_string(r.dom.mode())}, {"checks", checks}});
    write_file(r.out / "plot.svg", emit_plot(r.dom, {r.sc.name + " verify", {}, {}}));
    return failed ? kExitCheckFailed : kExitOk;
}

int dispatch(Experiment e, const Globals& g) {
    std::vector<std::string> overrides = g.sets;
    if (g.seed) overrides.push_back("seed=" + std::to_string(*g.seed));
    if (!g.from.empty()) {
        const Vec2 p = vec2_from_string(g.from);
        overrides.push_back("geodesic.from=[" + json(p.x).dump() + "," + json(p.y).dump() + "]");
    }
    if (!g.to.empty()) {
        const Vec2 p = vec2_from_string(g.to);
        overrides.push_back("geodesic.to=[" + json(p.x).dump() + "," + json(p.y).dump() + "]");
    }
    overrides.push_back(std::string("experiment=\"") + to_string(e) + "\"");
    Scenario sc = load_scenario(g.scenario, overrides);
    PolygonalDomain dom = validate_scenario(sc);
    Run r{sc, dom, g.out.empty() ? fs::path(sc.output) : fs::path(g.out), resolve_threads(g.threads)};
    fs::create_directories(r.out);
    switch (e) {
        case Experiment::validate: return cmd_validate(r);
        case Experiment::geodesic: return cmd_geodesic(r);
        case Experiment::pursue: return cmd_pursue(r);
        case Experiment::couple: return cmd_couple(r);
        case Experiment::probe: return cmd_probe(r);
        case Experiment::rescale: return cmd_rescale(r);
        case Experiment::verify: return cmd_verify(r);
    }
    return kExitInputError;
}

bool is_input_error(ErrorCode c) {
    switch (c) {
        case ErrorCode::DegeneratePolygon:
        case ErrorCode::SelfIntersecting:
        case ErrorCode::RoundingTooLarge:
        case ErrorCode::PointOutsideDomain:
        case ErrorCode::StepTooLarge:
        case ErrorCode::InvalidArgument:
        case ErrorCode::CoincidentPoints:
            return true;
        default:
            return false;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lion-and-Man pursuit and reflected coupling experiments on polygonal domains"};
    app.require_subcommand(1);
    Globals g;
    std::optional<Experiment> chosen;

    auto add_common = [&](CLI::App* sub, Experiment e) {
        sub->add_option("--scenario", g.scenario, "scenario JSON file")->required()->check(CLI::ExistingFile);
        sub->add_option("--seed", g.seed, "override the scenario seed");
        sub->add_option("--out", g.out, "output directory (default: the scenario's output)");
        sub->add_option("--set", g.sets, "override a scenario value, KEY=VALUE with a dotted key")->take_all();
        sub->add_option("--threads", g.threads, "worker threads, 0 = auto")->envname("CAT0_PURSUIT_THREADS");
        sub->callback([&chosen, e] { chosen = e; });
    };
    add_common(app.add_subcommand("validate", "check a domain and print its derived constants"), Experiment::validate);
    auto* geo = app.add_subcommand("geodesic", "intrinsic geodesic between two points");
    add_common(geo, Experiment::geodesic);
    geo->add_option("--from", g.from, "start point x,y");
    geo->add_option("--to", g.to, "end point x,y");
    auto* pur = app.add_subcommand("pursue", "greedy Lion against the scenario's evaders");
    pur->alias("pursuit");
    add_common(pur, Experiment::pursue);
    add_common(app.add_subcommand("couple", "one coupled reflected pair"), Experiment::couple);
    add_common(app.add_subcommand("probe", "Monte Carlo non-shyness probe"), Experiment::probe);
    add_common(app.add_subcommand("rescale", "rescaled drifted coupling against deterministic pursuit"), Experiment::rescale);
    add_common(app.add_subcommand("verify", "geometric verification suite"), Experiment::verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        return dispatch(*chosen, g);
    } catch (const ScenarioError& e) {
        std::cerr << "scenario error:\n";
        for (const auto& p : e.problems()) std::cerr << "  " << p << "\n";
        return kExitInputError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return is_input_error(e.code()) ? kExitInputError : kExitCheckFailed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}
