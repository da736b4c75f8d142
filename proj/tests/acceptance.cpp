// Acceptance run: one PASS/FAIL line per criterion.
//
//   cat0_acceptance            all criteria
//   cat0_acceptance 3 6        selected criteria
//
// Exit status is nonzero when any selected criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "cat0/coupling.hpp"
#include "cat0/pursuit.hpp"
#include "cat0/shapes.hpp"
#include "cat0/suite.hpp"
#include "oracles.hpp"

using namespace cat0;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances and sizes.
constexpr double kOracleRelTol = 0.015;
constexpr double kSqrt2Tol = 1e-9;
constexpr double kC1Budget = 30.0;
constexpr int kC1Pairs = 50;
constexpr int kC2Triangles = 100;
constexpr int kC2Grid = 16;
constexpr double kC2Budget = 60.0;
constexpr int kC3Pairs = 50;
constexpr double kC3Budget = 60.0;
constexpr int kC4Pairs = 500;
constexpr int kC5Pairs = 20;
constexpr double kPursuitDt = 1e-3;
constexpr double kPursuitEps = 0.2;
constexpr double kC6Budget = 300.0;
constexpr double kSig4 = 5e-5;
constexpr double kDerivTol = 0.02;
constexpr double kIdentityTol = 1e-12;
constexpr int kIdentityStates = 10000;
constexpr int kCovSteps = 100000;
constexpr double kCovRelTol = 0.05;
constexpr int kStepTrials = 10000;
constexpr double kLip1Slack = 1e-3;
constexpr int kProbeTrials = 200;
constexpr int kProbeWindows = 5;
constexpr double kProbeDt = 2.5e-3;
constexpr double kC11Budget = 600.0;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double v, int prec = 4) {
    std::ostringstream os;
    os.precision(prec);
    os << v;
    return os.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------- 1

Outcome c1_geodesic_oracle() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    int pairs = 0, hidden = 0;
    std::string worst_at;
    for (const auto& b : shapes::bundled()) {
        const auto d = shapes::make(b, BoundaryMode::sharp);
        std::vector<oracle::P> poly;
        for (auto v : d.vertices()) poly.push_back({v.x, v.y});
        const oracle::GridDijkstra grid(poly, d.feature_size() / 64);
        CounterRng rng(1001, 0);
        for (int i = 0; i < kC1Pairs; ++i) {
            const Vec2 x = sample_point(d, rng), y = sample_point(d, rng);
            const double ref = grid.distance({x.x, x.y}, {y.x, y.y});
            const double got = intrinsic_distance(d, x, y);
            const double rel = std::abs(got - ref) / std::max(ref, 1e-12);
            hidden += !d.visible(x, y);
            ++pairs;
            if (rel > worst) {
                worst = rel;
                worst_at = b.name;
            }
        }
    }
    const auto l = shapes::make(shapes::bundled()[1], BoundaryMode::sharp);
    const double e2 = std::abs(intrinsic_distance(l, {1.5, 0.5}, {0.5, 1.5}) - std::sqrt(2.0));
    const double secs = seconds_since(t0);
    return {worst <= kOracleRelTol && e2 <= kSqrt2Tol && secs < kC1Budget,
            "max rel err " + fmt(100 * worst) + "% (" + worst_at + ") over " + std::to_string(pairs) + " pairs, " +
                std::to_string(hidden) + " non-visible; L-shape sqrt2 err " + fmt(e2) + "; " + fmt(secs, 3) + " s"};
}

// ---------------------------------------------------------------- 2

Outcome c2_cat0() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    double worst = -1e300;
    int fails = 0;
    for (const auto& b : shapes::bundled())
        for (auto m : {BoundaryMode::sharp, BoundaryMode::rounded}) {
            const auto r = suite_cat0(shapes::make(b, m), kC2Triangles, kC2Grid, 2002);
            fails += r.details["fail"].get<int>();
            worst = std::max(worst, r.details["max_violation"].get<double>() - r.details["tolerance"].get<double>());
            ok = ok && r.status != CheckStatus::fail;
        }
    const double secs = seconds_since(t0);
    return {ok && secs < kC2Budget, std::to_string(fails) + " failing triangles over 5 shapes x 2 models x " +
                                        std::to_string(kC2Triangles) + "; worst violation minus tau_cat " + fmt(worst) +
                                        "; " + fmt(secs, 3) + " s"};
}

// ---------------------------------------------------------------- 3

Outcome c3_gauss() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    double worst_grad = 0.0, min_exp = 1e300;
    for (const auto& b : shapes::bundled())
        for (auto m : {BoundaryMode::sharp, BoundaryMode::rounded}) {
            const auto r = suite_gauss(shapes::make(b, m), kC3Pairs, 3003);
            ok = ok && r.status != CheckStatus::fail;
            worst_grad = std::max(worst_grad, r.details["max_gradient_error"].get<double>());
            if (m == BoundaryMode::rounded && r.details["residual_exponent"].is_number())
                min_exp = std::min(min_exp, r.details["residual_exponent"].get<double>());
        }
    const double secs = seconds_since(t0);
    return {ok && secs < kC3Budget, "max |grad + chi| " + fmt(worst_grad) + " (limit 5e-3); min rounded residual exponent " +
                                        fmt(min_exp) + " (limit 1.4); " + fmt(secs, 3) + " s"};
}

// ---------------------------------------------------------------- 4

Outcome c4_sandwich() {
    bool ok = true;
    int fails = 0;
    double min_exp = 1e300;
    for (const auto& b : shapes::bundled()) {
        const auto r = suite_sandwich(shapes::make(b, BoundaryMode::rounded), kC4Pairs, 4004);
        ok = ok && r.status != CheckStatus::fail;
        fails += r.details["fail"].get<int>();
        if (r.details.contains("taylor_exponent") && r.details["taylor_exponent"].is_number())
            min_exp = std::min(min_exp, r.details["taylor_exponent"].get<double>());
    }
    return {ok, std::to_string(fails) + " sandwich violations over 5 x " + std::to_string(kC4Pairs) +
                    " close pairs; min Taylor exponent " + fmt(min_exp) + " (limit 1.8)"};
}

// ---------------------------------------------------------------- 5

Outcome c5_regularity() {
    bool ok = true;
    std::string detail;
    for (const char* name : {"zchannel", "lshape"}) {
        shapes::Bundled b;
        for (const auto& x : shapes::bundled())
            if (x.name == name) b = x;
        const auto d = shapes::make(b, BoundaryMode::rounded);
        const double r = d.rounding_radius();
        CounterRng rng(5005, 0);
        double worst_ratio = 0.0;
        std::map<double, int> chord_pass;
        int chord_fail = 0;
        for (int i = 0; i < kC5Pairs; ++i) {
            const auto [a, c] = sample_pair(d, rng, 0.25 * d.euclidean_diameter());
            const auto g = geodesic(d, a, c);
            const auto lip = direction_lipschitz_check(g, d);
            worst_ratio = std::max(worst_ratio, lip.details["max_ratio"].get<double>() / lip.details["bound"].get<double>());
            ok = ok && lip.passed();
            for (double t : {r / 8, r / 4, r / 2}) {
                const auto ch = chord_approx_check(g, t, d);
                if (ch.status == CheckStatus::pass) ++chord_pass[t];
                if (ch.status == CheckStatus::fail) ++chord_fail;
            }
        }
        // Every t must actually be exercised.
        ok = ok && chord_fail == 0 && chord_pass.size() == 3;
        detail += std::string(name) + ": max ratio/bound " + fmt(worst_ratio) + " (limit 1.05), chord fails " +
                  std::to_string(chord_fail) + ", t values exercised " + std::to_string(chord_pass.size()) + "/3; ";
    }
    return {ok, detail};
}

// ---------------------------------------------------------------- 6-8

struct PursuitCase {
    std::string shape;
    std::string evader;
    double t_c = 0.0;
    double diam = 0.0;
    PursuitTrace trace;
    CheckReport fv, cv;
};

struct PursuitRun {
    std::vector<PursuitCase> cases;
    double seconds = 0.0;
};

const PursuitRun& pursuit_run() {
    static const PursuitRun run = [] {
        const auto t0 = std::chrono::steady_clock::now();
        const std::map<std::string, std::pair<Vec2, Vec2>> starts{{"square", {{0.1, 0.1}, {0.9, 0.9}}},
                                                                   {"lshape", {{1.8, 0.2}, {0.2, 1.8}}},
                                                                   {"zchannel", {{0.2, 0.5}, {2.8, 2.5}}},
                                                                   {"gon20", {{-0.8, 0.0}, {0.8, 0.0}}},
                                                                   {"star", {{0.0, 0.8}, {-0.47, -0.647}}}};
        PursuitRun out;
        for (const auto& b : shapes::bundled()) {
            const auto d = shapes::make(b, BoundaryMode::rounded);
            const double diam = intrinsic_diameter(d, 3);
            const double tc = capture_time_bound(diam, kPursuitEps).t_c;
            const auto [x0, y0] = starts.at(b.name);
            CounterRng rng(6006, 0);
            std::vector<EvaderSpec> specs(7);
            specs[0].kind = EvaderKind::stationary;
            specs[1].kind = EvaderKind::run_away;
            specs[2].kind = EvaderKind::wall_hug;
            specs[3].kind = EvaderKind::scripted_waypoints;
            for (int k = 0; k < 3; ++k) specs[3].waypoints.push_back(sample_point(d, rng, 0.05));
            for (int s = 0; s < 3; ++s) {
                specs[4 + s].kind = EvaderKind::random_turn;
                specs[4 + s].seed = 61 + s;
            }
            PursuitOptions o;
            o.dt = kPursuitDt;
            o.epsilon = kPursuitEps;
            o.t_max = tc;
            for (const auto& s : specs) {
                PursuitCase c{b.name, s.label(), tc, diam, simulate_pursuit(d, x0, y0, s, o), {}, {}};
                c.fv = first_variation_check(c.trace, d);
                c.cv = curvature_bound_check(c.trace, kPursuitEps, diam);
                out.cases.push_back(std::move(c));
            }
        }
        out.seconds = seconds_since(t0);
        return out;
    }();
    return run;
}

Outcome c6_capture() {
    const auto& run = pursuit_run();
    bool ok = run.seconds < kC6Budget;
    double worst_frac = 0.0;
    std::string worst_case;
    for (const auto& c : run.cases) {
        const bool captured = c.trace.captured_at && *c.trace.captured_at <= c.t_c;
        ok = ok && captured;
        const double frac = c.trace.captured_at ? *c.trace.captured_at / c.t_c : INFINITY;
        if (frac > worst_frac) {
            worst_frac = frac;
            worst_case = c.shape + "/" + c.evader + " at " + (c.trace.captured_at ? fmt(*c.trace.captured_at) : "never");
        }
    }
    const double a = capture_time_bound(2.0, 0.5).t_c, ra = oracle::capture_time(2.0, 0.5);
    const double b = capture_time_bound(std::sqrt(2.0), 0.4).t_c, rb = oracle::capture_time(std::sqrt(2.0), 0.4);
    const bool ref_ok = std::abs(a - ra) <= kSig4 * ra && std::abs(b - rb) <= kSig4 * rb &&
                        std::abs(a - 187.1) <= 1e-3 * 187.1 && std::abs(b - 102.4) <= 1e-3 * 102.4;
    return {ok && ref_ok, std::to_string(run.cases.size()) + " runs; worst captured_at/t_c " + fmt(worst_frac) + " (" +
                              worst_case + "); t_c(2,0.5) = " + fmt(a, 7) + " vs root " + fmt(ra, 7) +
                              ", t_c(sqrt2,0.4) = " + fmt(b, 7) + " vs root " + fmt(rb, 7) + "; " + fmt(run.seconds, 3) +
                              " s"};
}

Outcome c7_first_variation() {
    const auto& run = pursuit_run();
    bool ok = true;
    double worst_stat = 0.0, worst_resid_ratio = 0.0;
    for (const auto& c : run.cases) {
        if (c.fv.status == CheckStatus::not_applicable) continue;
        ok = ok && c.fv.passed();
        worst_resid_ratio = std::max(worst_resid_ratio, c.fv.details["max_residual"].get<double>() / std::sqrt(kPursuitDt));
        if (c.evader == "stationary") {
            const double dev = std::abs(c.fv.details["mean_measured_derivative"].get<double>() + 1.0);
            worst_stat = std::max(worst_stat, dev);
        }
    }
    // Running away in a long corridor before the Man reaches the far wall.
    const auto corridor = PolygonalDomain::create({{0, 0}, {6, 0}, {6, 1}, {0, 1}}, 0.1, std::nullopt, std::nullopt,
                                                  BoundaryMode::rounded);
    PursuitOptions o;
    o.dt = kPursuitDt;
    o.epsilon = kPursuitEps;
    o.t_max = 10;
    EvaderSpec away;
    away.kind = EvaderKind::run_away;
    const auto tr = simulate_pursuit(corridor, {0.2, 0.5}, {1.2, 0.5}, away, o);
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t k = 0; k + 1 < tr.samples.size() && !tr.samples[k].man_contact; ++k, ++n)
        sum += (tr.samples[k + 1].d_intr - tr.samples[k].d_intr) / o.dt;
    const double away_mean = n ? sum / n : INFINITY;
    ok = ok && worst_stat <= kDerivTol && std::abs(away_mean) <= kDerivTol && n > 1000;
    return {ok, "stationary max |mean derivative + 1| " + fmt(worst_stat) + "; run-away mean derivative " + fmt(away_mean) +
                    " over " + std::to_string(n) + " steps; max residual / sqrt(dt) " + fmt(worst_resid_ratio) +
                    " (limit 2)"};
}

Outcome c8_curvature() {
    const auto& run = pursuit_run();
    bool ok = true;
    double min_margin = INFINITY;
    for (const auto& c : run.cases) {
        ok = ok && c.cv.passed();
        min_margin = std::min(min_margin, c.cv.margin);
    }
    return {ok, "min bound - tau over " + std::to_string(run.cases.size()) + " traces " + fmt(min_margin)};
}

// ---------------------------------------------------------------- 9

Outcome c9_coupling() {
    const std::vector<CouplingStrategy> strategies{{CouplingKind::synchronous},
                                                   {CouplingKind::mirror},
                                                   {CouplingKind::independent},
                                                   {CouplingKind::perverse_radial},
                                                   {CouplingKind::custom_rotation, 0.7}};
    const double dt = 1e-3;
    const BrownianDriver drv(9009, dt);
    double worst_id = 0.0, worst_cov = 0.0;
    for (const auto& s : strategies) {
        CounterRng rng(9009, 1);
        for (int i = 0; i < kIdentityStates; ++i) {
            const Vec2 X{rng.uniform(-2, 2), rng.uniform(-2, 2)}, Y{rng.uniform(-2, 2), rng.uniform(-2, 2)};
            worst_id = std::max(worst_id, s.step(X, Y).identity_error());
        }
        double sxx = 0, sxy = 0, syy = 0;
        for (int k = 0; k < kCovSteps; ++k) {
            const Vec2 X{rng.uniform(), rng.uniform()}, Y{rng.uniform(), rng.uniform()};
            const Vec2 n = s.step(X, Y).apply(drv.increment(streams::B, k), drv.increment(streams::A, k));
            sxx += n.x * n.x;
            sxy += n.x * n.y;
            syy += n.y * n.y;
        }
        const double N = kCovSteps;
        worst_cov = std::max({worst_cov, std::abs(sxx / N - dt) / dt, std::abs(syy / N - dt) / dt, std::abs(sxy / N) / dt});
    }
    return {worst_id <= kIdentityTol && worst_cov <= kCovRelTol,
            "max identity error " + fmt(worst_id) + "; max covariance deviation " + fmt(100 * worst_cov) + "% of dt"};
}

// ---------------------------------------------------------------- 10

Outcome c10_skorokhod() {
    // Single projected steps from points on the rounding arcs.
    int exceed = 0, exceed_exact = 0;
    double worst_rel = 0.0;
    for (const auto& b : shapes::bundled()) {
        const auto d = shapes::make(b, BoundaryMode::rounded);
        if (d.arcs().empty()) continue;
        const double r = d.rounding_radius();
        CounterRng rng(10010, 0);
        for (int i = 0; i < kStepTrials / 4; ++i) {
            const auto& arc = d.arcs()[i % d.arcs().size()];
            const Vec2 x = arc.point_at_angle(arc.start_angle + rng.uniform() * arc.sweep);
            const double a = rng.uniform(0.0, r / 2);
            const double th = rng.uniform(0.0, 2 * kPi);
            double L = 0.0;
            const double moved = distance(skorokhod_step(d, x, Vec2{std::cos(th), std::sin(th)} * a, L), x);
            const double poly = projected_step_bound(a, r);
            if (moved > poly + 1e-12) ++exceed;
            if (moved > projected_step_exact_bound(a, r) + 1e-12) ++exceed_exact;
            if (a > 0) worst_rel = std::max(worst_rel, (moved - poly) / a);
        }
    }
    // Drift-only reflected paths toward a far target.
    bool lip_ok = true;
    double worst_lip = 0.0;
    const double dt = 1e-3;
    for (const auto& b : shapes::bundled()) {
        const auto d = shapes::make(b, BoundaryMode::rounded);
        CounterRng rng(10011, 0);
        const auto [x0, target] = sample_pair(d, rng, 0.5 * d.euclidean_diameter());
        std::vector<Vec2> inc;
        Vec2 z = x0;
        double L = 0.0;
        for (int k = 0; k < 3000 && intrinsic_distance(d, z, target) > 0.01; ++k) {
            const Vec2 step = chi(d, z, target) * dt;
            inc.push_back(step);
            z = skorokhod_step(d, z, step, L);
        }
        const auto p = reflect_increments(d, x0, inc, dt);
        const auto rep = intrinsic_lip1_check(p.points, d, dt);
        worst_lip = std::max(worst_lip, rep.details["max_ratio"].get<double>());
        lip_ok = lip_ok && rep.passed() && rep.details["max_ratio"].get<double>() <= 1.0 + kLip1Slack;
    }
    return {exceed == 0 && lip_ok,
            std::to_string(exceed) + "/" + std::to_string(kStepTrials) +
                " steps exceed a(1 + a^2/(8r^2)), max excess/a " + fmt(worst_rel) + " (exact disc bound exceeded " +
                std::to_string(exceed_exact) + " times); drift-only Lip(1) max ratio " + fmt(worst_lip, 7)};
}

// ---------------------------------------------------------------- 11

Outcome c11_shyness() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    struct Case {
        const char* name;
        Vec2 x0, y0;
        std::uint64_t seed;
    };
    for (const Case& c : {Case{"square", {0.1, 0.1}, {0.9, 0.9}, 100}, Case{"lshape", {1.8, 0.2}, {0.2, 1.8}, 200}}) {
        shapes::Bundled b;
        for (const auto& x : shapes::bundled())
            if (x.name == c.name) b = x;
        const auto d = PolygonalDomain::create(b.vertices, 0.5, std::nullopt, std::nullopt, BoundaryMode::rounded);
        const double diam = intrinsic_diameter(d, 3);
        ShynessOptions o;
        o.epsilon = 0.2;
        o.t1 = 10 * diam * diam;
        o.trials = kProbeTrials;
        o.windows = kProbeWindows;
        o.dt = kProbeDt;
        o.base_seed = c.seed;
        detail += (detail.empty() ? "" : " ") + std::string(c.name) + ":";
        for (auto kind : {CouplingKind::synchronous, CouplingKind::mirror, CouplingKind::independent,
                          CouplingKind::perverse_radial}) {
            const auto rep = shyness_probe(d, c.x0, c.y0, {kind}, o);
            int min_w = rep.trials;
            for (int h : rep.window_hits) min_w = std::min(min_w, h);
            ok = ok && rep.hits >= 1 && min_w >= 1 && static_cast<int>(rep.window_hits.size()) == kProbeWindows;
            detail += " " + std::string(to_string(kind)) + " " + std::to_string(rep.hits) + " hits/min window " +
                      std::to_string(min_w) + ";";
        }
    }
    const double secs = seconds_since(t0);
    return {ok && secs < kC11Budget, detail + " " + fmt(secs, 3) + " s"};
}

// ---------------------------------------------------------------- 12

Outcome c12_rescaled() {
    const auto d = PolygonalDomain::create(shapes::unit_square(), 0.5, std::nullopt, std::nullopt, BoundaryMode::rounded);
    bool ok = true;
    std::string detail;
    for (std::uint64_t seed : {1, 2, 3}) {
        const auto t = rescaled_convergence_experiment(d, {0.2, 0.2}, {0.6, 0.7}, {CouplingKind::mirror}, {4, 16, 64, 256},
                                                       seed, RescaledOptions{});
        ok = ok && t.pass;
        detail += "seed " + std::to_string(seed) + ":";
        for (const auto& row : t.rows) detail += " " + fmt(row.deviation, 3);
        detail += " (" + std::to_string(t.inversions) + " inv); ";
    }
    return {ok, detail};
}

// ---------------------------------------------------------------- 13

int run_cli(const std::string& args) {
    const std::string cmd = std::string(CAT0_CLI) + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome c13_determinism() {
    const fs::path root = fs::temp_directory_path() / "cat0_acceptance_13";
    fs::remove_all(root);
    int scenarios = 0, files = 0, mismatched = 0, errors = 0;
    std::vector<fs::path> paths;
    for (const auto& e : fs::directory_iterator(fs::path(CAT0_SOURCE_DIR) / "scenarios"))
        if (e.path().extension() == ".json" && e.path().filename() != "scenario.schema.json") paths.push_back(e.path());
    std::sort(paths.begin(), paths.end());
    for (const auto& p : paths) {
        const auto j = nlohmann::json::parse(slurp(p));
        const std::string cmd = j.value("experiment", "validate");
        const fs::path a = root / (p.stem().string() + "_a"), b = root / (p.stem().string() + "_b");
        const int ra = run_cli(cmd + " --scenario " + p.string() + " --out " + a.string());
        const int rb = run_cli(cmd + " --scenario " + p.string() + " --threads 2 --out " + b.string());
        ++scenarios;
        if (ra == 2 || rb == 2 || ra != rb || !fs::exists(a)) {
            ++errors;
            continue;
        }
        for (const auto& f : fs::directory_iterator(a)) {
            ++files;
            if (slurp(f.path()) != slurp(b / f.path().filename())) ++mismatched;
        }
        if (std::distance(fs::directory_iterator(a), fs::directory_iterator{}) !=
            std::distance(fs::directory_iterator(b), fs::directory_iterator{}))
            ++mismatched;
    }
    fs::remove_all(root);
    return {errors == 0 && mismatched == 0 && scenarios > 0,
            std::to_string(scenarios) + " scenarios, " + std::to_string(files) + " files compared, " +
                std::to_string(mismatched) + " mismatched, " + std::to_string(errors) + " run errors"};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"geodesic oracle equivalence", c1_geodesic_oracle},
        {"CAT(0) triangle comparison", c2_cat0},
        {"distance gradient", c3_gauss},
        {"metric sandwich and Taylor ratio", c4_sandwich},
        {"direction Lipschitz and chord bound", c5_regularity},
        {"deterministic capture", c6_capture},
        {"first variation", c7_first_variation},
        {"total curvature bound", c8_curvature},
        {"coupling identity and marginals", c9_coupling},
        {"Skorokhod step bound and Lip(1)", c10_skorokhod},
        {"non-shyness evidence", c11_shyness},
        {"rescaled convergence", c12_rescaled},
        {"determinism", c13_determinism},
    };
    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
    bool all_ok = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!only.empty() && !only.count(id)) continue;
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        all_ok = all_ok && o.pass;
        std::printf("criterion %2d %s  %s: %s\n", id, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(), o.detail.c_str());
        std::fflush(stdout);
    }
    return all_ok ? 0 : 1;
}
