#pragma once
// Scenario files: JSON experiment definitions with defaults, dotted-path
// overrides and up-front validation.

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cat0/io.hpp"

namespace cat0 {

enum class Experiment { validate, geodesic, pursue, couple, probe, rescale, verify };

inline const char* to_string(Experiment e) {
    switch (e) {
        case Experiment::validate: return "validate";
        case Experiment::geodesic: return "geodesic";
        case Experiment::pursue: return "pursue";
        case Experiment::couple: return "couple";
        case Experiment::probe: return "probe";
        case Experiment::rescale: return "rescale";
        case Experiment::verify: return "verify";
    }
    return "?";
}

inline std::optional<Experiment> experiment_from_string(const std::string& s) {
    for (auto e : {Experiment::validate, Experiment::geodesic, Experiment::pursue, Experiment::couple, Experiment::probe,
                   Experiment::rescale, Experiment::verify})
        if (s == to_string(e)) return e;
    if (s == "pursuit") return Experiment::pursue;
    return std::nullopt;
}

struct GeodesicParams {
    Vec2 from{0.0, 0.0};
    Vec2 to{0.0, 0.0};
};

struct EvaderParams {
    std::string kind = "stationary";
    std::vector<Vec2> waypoints;
    std::optional<std::uint64_t> seed;  // random_turn; defaults to the scenario seed
    double turn_rate = 2.0;
    double offset_steps = 2.0;
    bool clockwise = false;
};

struct PursuitParams {
    Vec2 lion{0.0, 0.0};
    Vec2 man{0.0, 0.0};
    std::vector<EvaderParams> evaders{EvaderParams{}};
    double dt = 1e-3;
    double epsilon = 0.2;
    std::optional<double> t_max;  // default: the capture bound
};

struct CouplingParams {
    Vec2 x0{0.0, 0.0};
    Vec2 y0{0.0, 0.0};
    std::string strategy = "mirror";
    double theta = 0.0;
    double dt = 2.5e-3;
    std::size_t steps = 4000;
    double drift = 0.0;
};

struct ProbeParams {
    Vec2 x0{0.0, 0.0};
    Vec2 y0{0.0, 0.0};
    std::vector<std::string> strategies{"synchronous", "mirror", "independent", "perverse_radial"};
    double epsilon = 0.2;
    std::optional<double> t1;  // default: 10 * intrinsic diameter^2
    int trials = 200;
    int windows = 5;
    double dt = 2.5e-3;
};

struct RescaleParams {
    Vec2 x0{0.0, 0.0};
    Vec2 y0{0.0, 0.0};
    std::string strategy = "mirror";
    std::vector<double> n_list{4, 16, 64, 256};
    double t_horizon = 2.0;
    double dt = 1e-3;
    std::vector<std::uint64_t> seeds;  // empty: the scenario seed only
};

struct VerifyParams {
    int pairs = 20;
    int triangles = 10;
    int grid_n = 16;
    int gauss_pairs = 10;
    int close_pairs = 100;
    int lipschitz_pairs = 10;
};

struct Scenario {
    std::string name;
    json domain = json::object();
    BoundaryMode mode = BoundaryMode::rounded;
    Experiment experiment = Experiment::validate;
    std::uint64_t seed = 0;
    std::string output = "out";
    GeodesicParams geodesic;
    PursuitParams pursuit;
    CouplingParams coupling;
    ProbeParams probe;
    RescaleParams rescale;
    VerifyParams verify;
};

/// Input error carrying every problem found.
class ScenarioError : public std::runtime_error {
public:
    explicit ScenarioError(std::vector<std::string> problems)
        : std::runtime_error(join(problems)), problems_(std::move(problems)) {}
    const std::vector<std::string>& problems() const { return problems_; }

private:
    static std::string join(const std::vector<std::string>& p) {
        std::string s;
        for (const auto& x : p) s += (s.empty() ? "" : "; ") + x;
        return s;
    }
    std::vector<std::string> problems_;
};

namespace detail {

/// Reads typed fields of one JSON object and records schema problems.
class FieldReader {
public:
    FieldReader(const json& obj, std::string path, std::vector<std::string>& errors)
        : obj_(obj), path_(std::move(path)), errors_(errors) {
        if (!obj_.is_object()) errors_.push_back(path_ + ": expected an object");
    }

    template <class T>
    void get(const char* key, T& out) {
        seen_.push_back(key);
        if (!obj_.is_object() || !obj_.contains(key)) return;
        read(obj_.at(key), out, path_ + "." + key);
    }

    void reject_unknown() {
        if (!obj_.is_object()) return;
        for (const auto& [k, v] : obj_.items())
            if (std::find(seen_.begin(), seen_.end(), k) == seen_.end()) errors_.push_back(path_ + "." + k + ": unknown key");
    }

private:
    void bad(const std::string& where, const char* expected, const json& v) {
        errors_.push_back(where + ": expected " + expected + ", got " + v.dump());
    }
    void read(const json& v, double& out, const std::string& w) {
        if (v.is_number()) out = v.get<double>(); else bad(w, "a number", v);
    }
    void read(const json& v, int& out, const std::string& w) {
        if (v.is_number_integer()) out = v.get<int>(); else bad(w, "an integer", v);
    }
    template <class U>
        requires(std::is_unsigned_v<U> && !std::is_same_v<U, bool>)
    void read(const json& v, U& out, const std::string& w) {
        if (v.is_number_unsigned()) out = v.get<U>(); else bad(w, "a non-negative integer", v);
    }
    void read(const json& v, bool& out, const std::string& w) {
        if (v.is_boolean()) out = v.get<bool>(); else bad(w, "a boolean", v);
    }
    void read(const json& v, std::string& out, const std::string& w) {
        if (v.is_string()) out = v.get<std::string>(); else bad(w, "a string", v);
    }
    void read(const json& v, json& out, const std::string&) { out = v; }
    void read(const json& v, Vec2& out, const std::string& w) {
        if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) out = {v[0].get<double>(), v[1].get<double>()};
        else bad(w, "a point [x, y]", v);
    }
    template <class T>
    void read(const json& v, std::optional<T>& out, const std::string& w) {
        if (v.is_null()) {
            out.reset();
            return;
        }
        T tmp{};
        read(v, tmp, w);
        out = tmp;
    }
    template <class T>
    void read(const json& v, std::vector<T>& out, const std::string& w) {
        if (!v.is_array()) {
            bad(w, "an array", v);
            return;
        }
        out.clear();
        for (std::size_t i = 0; i < v.size(); ++i) {
            T tmp{};
            read(v[i], tmp, w + "[" + std::to_string(i) + "]");
            out.push_back(std::move(tmp));
        }
    }
    void read(const json& v, EvaderParams& e, const std::string& w) {
        FieldReader r(v, w, errors_);
        r.get("kind", e.kind);
        r.get("waypoints", e.waypoints);
        r.get("seed", e.seed);
        r.get("turn_rate", e.turn_rate);
        r.get("offset_steps", e.offset_steps);
        r.get("clockwise", e.clockwise);
        r.reject_unknown();
    }

    const json& obj_;
    std::string path_;
    std::vector<std::string>& errors_;
    std::vector<std::string> seen_;
};

template <class T>
json opt_json(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

inline json points_json(const std::vector<Vec2>& pts) {
    json a = json::array();
    for (const auto& p : pts) a.push_back(to_json(p));
    return a;
}

}  // namespace detail

inline json to_json(const Scenario& s) {
    json evaders = json::array();
    for (const auto& e : s.pursuit.evaders)
        evaders.push_back({{"kind", e.kind},
                           {"waypoints", detail::points_json(e.waypoints)},
                           {"seed", detail::opt_json(e.seed)},
                           {"turn_rate", e.turn_rate},
                           {"offset_steps", e.offset_steps},
                           {"clockwise", e.clockwise}});
    return {
        {"name", s.name},
        {"domain", s.domain},
        {"mode", to_string(s.mode)},
        {"experiment", to_string(s.experiment)},
        {"seed", s.seed},
        {"output", s.output},
        {"geodesic", {{"from", to_json(s.geodesic.from)}, {"to", to_json(s.geodesic.to)}}},
        {"pursuit",
         {{"lion", to_json(s.pursuit.lion)},
          {"man", to_json(s.pursuit.man)},
          {"evaders", evaders},
          {"dt", s.pursuit.dt},
          {"epsilon", s.pursuit.epsilon},
          {"t_max", detail::opt_json(s.pursuit.t_max)}}},
        {"coupling",
         {{"x0", to_json(s.coupling.x0)},
          {"y0", to_json(s.coupling.y0)},
          {"strategy", s.coupling.strategy},
          {"theta", s.coupling.theta},
          {"dt", s.coupling.dt},
          {"steps", s.coupling.steps},
          {"drift", s.coupling.drift}}},
        {"probe",
         {{"x0", to_json(s.probe.x0)},
          {"y0", to_json(s.probe.y0)},
          {"strategies", s.probe.strategies},
          {"epsilon", s.probe.epsilon},
          {"t1", detail::opt_json(s.probe.t1)},
          {"trials", s.probe.trials},
          {"windows", s.probe.windows},
          {"dt", s.probe.dt}}},
        {"rescale",
         {{"x0", to_json(s.rescale.x0)},
          {"y0", to_json(s.rescale.y0)},
          {"strategy", s.rescale.strategy},
          {"n_list", s.rescale.n_list},
          {"t_horizon", s.rescale.t_horizon},
          {"dt", s.rescale.dt},
          {"seeds", s.rescale.seeds}}},
        {"verify",
         {{"pairs", s.verify.pairs},
          {"triangles", s.verify.triangles},
          {"grid_n", s.verify.grid_n},
          {"gauss_pairs", s.verify.gauss_pairs},
          {"close_pairs", s.verify.close_pairs},
          {"lipschitz_pairs", s.verify.lipschitz_pairs}}},
    };
}

/// Schema-level parse.  Throws ScenarioError listing every problem.
inline Scenario scenario_from_json(const json& j) {
    std::vector<std::string> errors;
    Scenario s;
    detail::FieldReader top(j, "$", errors);
    std::string mode = to_string(s.mode), experiment = to_string(s.experiment);
    top.get("name", s.name);
    top.get("domain", s.domain);
    top.get("mode", mode);
    top.get("experiment", experiment);
    top.get("seed", s.seed);
    top.get("output", s.output);
    const json empty = json::object();
    auto sub = [&](const char* key) -> const json& { return j.is_object() && j.contains(key) ? j.at(key) : empty; };
    json ignored;
    for (const char* key : {"geodesic", "pursuit", "coupling", "probe", "rescale", "verify"}) top.get(key, ignored);
    top.reject_unknown();

    {
        detail::FieldReader r(sub("geodesic"), "$.geodesic", errors);
        r.get("from", s.geodesic.from);
        r.get("to", s.geodesic.to);
        r.reject_unknown();
    }
    {
        detail::FieldReader r(sub("pursuit"), "$.pursuit", errors);
        r.get("lion", s.pursuit.lion);
        r.get("man", s.pursuit.man);
        r.get("evaders", s.pursuit.evaders);
        r.get("dt", s.pursuit.dt);
        r.get("epsilon", s.pursuit.epsilon);
        r.get("t_max", s.pursuit.t_max);
        r.reject_unknown();
    }
    {
        detail::FieldReader r(sub("coupling"), "$.coupling", errors);
        r.get("x0", s.coupling.x0);
        r.get("y0", s.coupling.y0);
        r.get("strategy", s.coupling.strategy);
        r.get("theta", s.coupling.theta);
        r.get("dt", s.coupling.dt);
        r.get("steps", s.coupling.steps);
        r.get("drift", s.coupling.drift);
        r.reject_unknown();
    }
    {
        detail::FieldReader r(sub("probe"), "$.probe", errors);
        r.get("x0", s.probe.x0);
        r.get("y0", s.probe.y0);
        r.get("strategies", s.probe.strategies);
        r.get("epsilon", s.probe.epsilon);
        r.get("t1", s.probe.t1);
        r.get("trials", s.probe.trials);
        r.get("windows", s.probe.windows);
        r.get("dt", s.probe.dt);
        r.reject_unknown();
    }
    {
        detail::FieldReader r(sub("rescale"), "$.rescale", errors);
        r.get("x0", s.rescale.x0);
        r.get("y0", s.rescale.y0);
        r.get("strategy", s.rescale.strategy);
        r.get("n_list", s.rescale.n_list);
        r.get("t_horizon", s.rescale.t_horizon);
        r.get("dt", s.rescale.dt);
        r.get("seeds", s.rescale.seeds);
        r.reject_unknown();
    }
    {
        detail::FieldReader r(sub("verify"), "$.verify", errors);
        r.get("pairs", s.verify.pairs);
        r.get("triangles", s.verify.triangles);
        r.get("grid_n", s.verify.grid_n);
        r.get("gauss_pairs", s.verify.gauss_pairs);
        r.get("close_pairs", s.verify.close_pairs);
        r.get("lipschitz_pairs", s.verify.lipschitz_pairs);
        r.reject_unknown();
    }

    if (mode == "sharp") s.mode = BoundaryMode::sharp;
    else if (mode == "rounded") s.mode = BoundaryMode::rounded;
    else errors.push_back("$.mode: must be 'sharp' or 'rounded'");
    if (auto e = experiment_from_string(experiment)) s.experiment = *e;
    else errors.push_back("$.experiment: unknown experiment '" + experiment + "'");
    if (!j.is_object() || !j.contains("domain")) errors.push_back("$.domain: required");
    if (!errors.empty()) throw ScenarioError(errors);
    return s;
}

inline Scenario load_scenario(const std::string& path, const std::vector<std::string>& overrides = {});

/// Applies "a.b.c=value"; the value is read as JSON when it parses, else as a string.
inline void apply_override(json& j, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) throw ScenarioError({"--set expects key=value, got '" + assignment + "'"});
    const std::string key = assignment.substr(0, eq), raw = assignment.substr(eq + 1);
    json value = json::parse(raw, nullptr, false);
    if (value.is_discarded()) value = raw;
    json* node = &j;
    std::size_t start = 0;
    for (;;) {
        const auto dot = key.find('.', start);
        const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (part.empty()) throw ScenarioError({"--set: empty path component in '" + key + "'"});
        if (!node->is_object()) *node = json::object();
        if (dot == std::string::npos) {
            (*node)[part] = value;
            return;
        }
        node = &(*node)[part];
        start = dot + 1;
    }
}

inline Scenario load_scenario(const std::string& path, const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) throw ScenarioError({"cannot read scenario file '" + path + "'"});
    std::stringstream buf;
    buf << in.rdbuf();
    json j = json::parse(buf.str(), nullptr, false);
    if (j.is_discarded()) throw ScenarioError({"'" + path + "' is not valid JSON"});
    for (const auto& o : overrides) apply_override(j, o);
    return scenario_from_json(j);
}

/// Semantic checks that need the domain: strategy names, points in the
/// closure, step-size preconditions.  Returns the built domain.
inline PolygonalDomain validate_scenario(const Scenario& s) {
    std::vector<std::string> errors;
    std::optional<PolygonalDomain> dom;
    try {
        dom = domain_from_json(s.domain, s.mode);
    } catch (const Error& e) {
        throw ScenarioError({std::string("$.domain: ") + e.what()});
    } catch (const json::exception& e) {
        throw ScenarioError({std::string("$.domain: ") + e.what()});
    }
    const auto& d = *dom;
    auto inside = [&](Vec2 p, const std::string& where) {
        if (d.classify(p) == Membership::exterior)
            errors.push_back(where + ": point (" + std::to_string(p.x) + ", " + std::to_string(p.y) + ") lies outside the domain");
    };
    switch (s.experiment) {
        case Experiment::validate: break;
        case Experiment::geodesic:
            inside(s.geodesic.from, "$.geodesic.from");
            inside(s.geodesic.to, "$.geodesic.to");
            break;
        case Experiment::pursue: {
            inside(s.pursuit.lion, "$.pursuit.lion");
            inside(s.pursuit.man, "$.pursuit.man");
            if (!(s.pursuit.epsilon > 0.0)) errors.push_back("$.pursuit.epsilon: must be positive");
            else if (s.pursuit.dt > max_pursuit_step(d, s.pursuit.epsilon))
                errors.push_back("$.pursuit.dt: StepTooLarge, dt=" + std::to_string(s.pursuit.dt) + " exceeds min{delta/(8 lambda), r/4, eps/8} = " +
                                 std::to_string(max_pursuit_step(d, s.pursuit.epsilon)));
            if (!(s.pursuit.dt > 0.0)) errors.push_back("$.pursuit.dt: must be positive");
            if (s.pursuit.evaders.empty()) errors.push_back("$.pursuit.evaders: at least one evader is required");
            for (std::size_t i = 0; i < s.pursuit.evaders.size(); ++i) {
                const auto& e = s.pursuit.evaders[i];
                const std::string w = "$.pursuit.evaders[" + std::to_string(i) + "]";
                try {
                    const auto k = evader_kind_from_string(e.kind);
                    if (k == EvaderKind::scripted_waypoints && e.waypoints.empty()) errors.push_back(w + ".waypoints: required for scripted_waypoints");
                } catch (const Error&) {
                    errors.push_back(w + ".kind: unknown evader strategy '" + e.kind + "'");
                }
                for (std::size_t k = 0; k < e.waypoints.size(); ++k) inside(e.waypoints[k], w + ".waypoints[" + std::to_string(k) + "]");
            }
            break;
        }
        case Experiment::couple: {
            inside(s.coupling.x0, "$.coupling.x0");
            inside(s.coupling.y0, "$.coupling.y0");
            try { coupling_kind_from_string(s.coupling.strategy); } catch (const Error&) {
                errors.push_back("$.coupling.strategy: unknown coupling strategy '" + s.coupling.strategy + "'");
            }
            if (!(s.coupling.dt > 0.0)) errors.push_back("$.coupling.dt: must be positive");
            else if (s.coupling.dt > max_diffusion_step(d))
                errors.push_back("$.coupling.dt: StepTooLarge, dt=" + std::to_string(s.coupling.dt) + " exceeds (r/8)^2 = " + std::to_string(max_diffusion_step(d)));
            if (s.coupling.drift < 0.0) errors.push_back("$.coupling.drift: must be non-negative");
            else if (s.coupling.drift * s.coupling.dt > d.rounding_radius() / 8.0)
                errors.push_back("$.coupling.drift: StepTooLarge, drift*dt exceeds r/8 = " + std::to_string(d.rounding_radius() / 8.0));
            break;
        }
        case Experiment::probe: {
            inside(s.probe.x0, "$.probe.x0");
            inside(s.probe.y0, "$.probe.y0");
            if (s.probe.strategies.empty()) errors.push_back("$.probe.strategies: at least one strategy is required");
            for (const auto& name : s.probe.strategies) {
                try { coupling_kind_from_string(name); } catch (const Error&) {
                    errors.push_back("$.probe.strategies: unknown coupling strategy '" + name + "'");
                }
            }
            if (!(s.probe.epsilon > 0.0)) errors.push_back("$.probe.epsilon: must be positive");
            if (s.probe.t1 && !(*s.probe.t1 > 0.0)) errors.push_back("$.probe.t1: must be positive");
            if (s.probe.trials < 1) errors.push_back("$.probe.trials: must be at least 1");
            if (s.probe.windows < 1) errors.push_back("$.probe.windows: must be at least 1");
            if (!(s.probe.dt > 0.0)) errors.push_back("$.probe.dt: must be positive");
            else if (s.probe.dt > max_diffusion_step(d))
                errors.push_back("$.probe.dt: StepTooLarge, dt=" + std::to_string(s.probe.dt) + " exceeds (r/8)^2 = " + std::to_string(max_diffusion_step(d)));
            break;
        }
        case Experiment::rescale: {
            inside(s.rescale.x0, "$.rescale.x0");
            inside(s.rescale.y0, "$.rescale.y0");
            try { coupling_kind_from_string(s.rescale.strategy); } catch (const Error&) {
                errors.push_back("$.rescale.strategy: unknown coupling strategy '" + s.rescale.strategy + "'");
            }
            if (s.rescale.n_list.empty()) errors.push_back("$.rescale.n_list: must not be empty");
            for (std::size_t i = 0; i < s.rescale.n_list.size(); ++i) {
                const double n = s.rescale.n_list[i];
                if (!(n > 0.0)) errors.push_back("$.rescale.n_list: entries must be positive");
                else if (s.rescale.dt / n > max_diffusion_step(d))
                    errors.push_back("$.rescale.dt: StepTooLarge for n=" + std::to_string(n) + ", dt/n exceeds (r/8)^2");
                if (i > 0 && !(n > s.rescale.n_list[i - 1])) errors.push_back("$.rescale.n_list: must be increasing");
            }
            if (!(s.rescale.dt > 0.0)) errors.push_back("$.rescale.dt: must be positive");
            else if (s.rescale.dt > d.rounding_radius() / 8.0)
                errors.push_back("$.rescale.dt: StepTooLarge, drift step exceeds r/8");
            if (!(s.rescale.t_horizon > 0.0)) errors.push_back("$.rescale.t_horizon: must be positive");
            break;
        }
        case Experiment::verify: {
            if (s.verify.pairs < 0 || s.verify.triangles < 0 || s.verify.gauss_pairs < 0 || s.verify.close_pairs < 0 ||
                s.verify.lipschitz_pairs < 0)
                errors.push_back("$.verify: counts must be non-negative");
            if (s.verify.grid_n < 2) errors.push_back("$.verify.grid_n: must be at least 2");
            break;
        }
    }
    if (!errors.empty()) throw ScenarioError(errors);
    return d;
}

}  // namespace cat0
