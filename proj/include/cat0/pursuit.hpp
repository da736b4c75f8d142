#pragma once
// Deterministic Lion and Man: greedy pursuit along intrinsic geodesics,
// evader strategies, the capture-time bound and the trace verifiers.

#include <optional>
#include <string>
#include <vector>

#include "cat0/checks.hpp"
#include "cat0/random.hpp"

namespace cat0 {

struct CaptureBound {
    double diam_intr = 0.0;
    double epsilon = 0.0;
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double q_c = 0.0;
    double t_c = 0.0;
    /// epsilon/2 >= diam_intr: every start is already captured.
    bool epsilon_too_large = false;
};

/// Positive root q_c of a q^2 - b q - c = 0 and t_c = q_c^2.
inline CaptureBound capture_time_bound(double diam_intr, double epsilon) {
    if (!(diam_intr > 0.0) || !(epsilon > 0.0))
        throw Error(ErrorCode::InvalidArgument, "diameter and epsilon must be positive");
    CaptureBound cb;
    cb.diam_intr = diam_intr;
    cb.epsilon = epsilon;
    if (epsilon / 2.0 >= diam_intr) {
        cb.epsilon_too_large = true;
        return cb;
    }
    cb.a = (kPi / 2.0) / (std::sqrt(2.0) * diam_intr);
    cb.b = (2.0 * std::sqrt(2.0) / epsilon) * std::sqrt(diam_intr - epsilon / 2.0);
    cb.c = kPi / 2.0;
    cb.q_c = (cb.b + std::sqrt(cb.b * cb.b + 4.0 * cb.a * cb.c)) / (2.0 * cb.a);
    cb.t_c = cb.q_c * cb.q_c;
    return cb;
}

/// (2 sqrt2 / eps) sqrt(diam - eps/2) sqrt(t).
inline double curvature_bound(double t, double epsilon, double diam_intr) {
    return 2.0 * std::sqrt(2.0) / epsilon * std::sqrt(std::max(0.0, diam_intr - epsilon / 2.0)) * std::sqrt(std::max(0.0, t));
}

enum class EvaderKind { stationary, run_away, wall_hug, scripted_waypoints, random_turn };

inline const char* to_string(EvaderKind k) {
    switch (k) {
        case EvaderKind::stationary: return "stationary";
        case EvaderKind::run_away: return "run_away";
        case EvaderKind::wall_hug: return "wall_hug";
        case EvaderKind::scripted_waypoints: return "scripted_waypoints";
        case EvaderKind::random_turn: return "random_turn";
    }
    return "?";
}

inline EvaderKind evader_kind_from_string(const std::string& s) {
    for (auto k : {EvaderKind::stationary, EvaderKind::run_away, EvaderKind::wall_hug, EvaderKind::scripted_waypoints,
                   EvaderKind::random_turn})
        if (s == to_string(k)) return k;
    if (s == "scripted") return EvaderKind::scripted_waypoints;
    throw Error(ErrorCode::InvalidArgument, "unknown evader strategy '" + s + "'");
}

struct EvaderSpec {
    EvaderKind kind = EvaderKind::stationary;
    std::vector<Vec2> waypoints;   // scripted_waypoints, visited cyclically
    std::uint64_t seed = 0;        // random_turn
    double turn_rate = 2.0;        // random_turn: heading diffusion, rad / sqrt(time)
    double offset_steps = 2.0;     // wall_hug: wall offset in units of dt
    int clockwise = 0;             // wall_hug: 1 starts clockwise

    std::string label() const {
        std::string s = to_string(kind);
        if (kind == EvaderKind::random_turn) s += "(" + std::to_string(seed) + ")";
        return s;
    }
};

/// What an evader sees at step k.  Strategies are non-anticipating: they use
/// only the current positions and the current geodesic.
struct EvaderView {
    const PolygonalDomain& domain;
    std::size_t step;
    double dt;
    Vec2 lion;
    Vec2 man;
    const GeodesicPath& lion_to_man;
};

class Evader {
public:
    explicit Evader(EvaderSpec spec) : spec_(std::move(spec)) {
        if (spec_.kind == EvaderKind::scripted_waypoints && spec_.waypoints.empty())
            throw Error(ErrorCode::InvalidArgument, "scripted evader needs at least one waypoint");
        if (spec_.kind == EvaderKind::random_turn)
            heading_ = 2.0 * kPi * to_unit(counter_hash(spec_.seed, streams::evader, 0));
        dir_ = spec_.clockwise ? -1.0 : 1.0;
    }

    const EvaderSpec& spec() const { return spec_; }

    /// Velocity with |H| <= 1.
    Vec2 velocity(const EvaderView& v) {
        switch (spec_.kind) {
            case EvaderKind::stationary: return {};
            case EvaderKind::run_away:
                return v.lion_to_man.length() > kGeomTol ? v.lion_to_man.direction_at(v.lion_to_man.length()) : Vec2{};
            case EvaderKind::scripted_waypoints: return scripted(v);
            case EvaderKind::random_turn: {
                const Vec2 h{std::cos(heading_), std::sin(heading_)};
                heading_ += spec_.turn_rate * std::sqrt(v.dt) * normal_pair(spec_.seed, streams::evader + 1, v.step).x;
                return h;
            }
            case EvaderKind::wall_hug: return wall_hug(v);
        }
        return {};
    }

private:
    Vec2 scripted(const EvaderView& v) {
        const std::size_t n = spec_.waypoints.size();
        for (std::size_t tries = 0; tries < n; ++tries) {
            const Vec2 target = spec_.waypoints[next_ % n];
            const auto g = geodesic(v.domain, v.man, target);
            if (g.length() > v.dt) return g.direction_at(0.0);
            if (n == 1) return g.length() > 0.0 ? (target - v.man) / v.dt : Vec2{};
            next_ = (next_ + 1) % n;
        }
        return {};
    }

    Vec2 wall_hug(const EvaderView& v) {
        const auto [q, idx] = v.domain.nearest_boundary_point(v.man);
        const double dist = distance(v.man, q);
        Vec2 inward;
        if (dist > 1e-12) {
            inward = (v.man - q) / dist;
        } else {
            const auto& pc = v.domain.pieces()[idx];
            if (pc.kind == BoundaryPiece::Kind::segment) {
                inward = -v.domain.edge_normal(pc.index);
            } else {
                inward = normalized(q - v.domain.arcs()[pc.index].center);
            }
        }
        const Vec2 tangent = right_perp(inward) * dir_;
        // Cornered: the Lion is close and ahead along the wall.
        if (cooldown_ > 0) {
            --cooldown_;
        } else if (v.lion_to_man.length() > kGeomTol) {
            const Vec2 toward_lion = -v.lion_to_man.direction_at(v.lion_to_man.length());
            if (dot(toward_lion, tangent) > 0.5 && v.lion_to_man.length() < 0.25 * v.domain.euclidean_diameter()) {
                dir_ = -dir_;
                cooldown_ = static_cast<int>(std::ceil(0.25 / v.dt));
                return -tangent;
            }
        }
        const double offset = spec_.offset_steps * v.dt;
        const double pull = std::clamp((offset - dist) / offset, -1.0, 1.0);
        return normalized(tangent + inward * pull);
    }

    EvaderSpec spec_;
    std::size_t next_ = 0;
    double heading_ = 0.0;
    double dir_ = 1.0;
    int cooldown_ = 0;
};

struct PursuitSample {
    double t = 0.0;
    Vec2 x;
    Vec2 y;
    double d_intr = 0.0;
    /// Signed turn of the Lion's path at x (between the incoming and outgoing steps).
    double lion_turn = 0.0;
    /// Unit tangent at y of the geodesic from x to y.
    Vec2 arrival;
    /// The Man's step from this sample was projected or clipped.
    bool man_contact = false;
};

struct PursuitTrace {
    double dt = 0.0;
    double epsilon = 0.0;
    std::vector<PursuitSample> samples;
    std::optional<double> captured_at;
    double max_monotone_excess = 0.0;
    std::string evader;
};

struct PursuitOptions {
    double dt = 1e-3;
    double epsilon = 0.2;
    double t_max = 100.0;
    bool check_monotone = true;
};

/// min{delta/(8 lambda), r/4, eps/8}.
inline double max_pursuit_step(const PolygonalDomain& d, double epsilon) {
    double h = std::min(d.rounding_radius() / 4.0, epsilon / 8.0);
    if (d.lipschitz() > 0.0) h = std::min(h, d.cone_radius() / (8.0 * d.lipschitz()));
    return h;
}

/// Per-step monotonicity slack 2 dt^2 (4/sqrt3) / (2 r sin a) + tau_geom.
inline double monotone_tolerance(const PolygonalDomain& d, double dt) {
    return 2.0 * dt * dt * direction_lipschitz_bound(d) + kGeomTol;
}

namespace detail {

/// One Man step: project y + H dt, then clip to intrinsic length dt.
inline Vec2 man_step(const PolygonalDomain& d, Vec2 y, Vec2 h, double dt, bool& contact) {
    const Vec2 free = y + h * dt;
    const auto pr = project_to_closure(d, free);
    Vec2 next = pr.point;
    contact = pr.distance > 0.0;
    if (contact || !d.visible(y, next)) {
        const auto g = geodesic(d, y, next);
        if (g.length() > dt * (1.0 + 1e-12)) {
            next = g.point_at(dt);
            contact = true;
        }
    }
    return next;
}

}  // namespace detail

/// Greedy pursuit.  The Lion advances a distance dt along the current
/// geodesic toward the Man (identical to x + chi dt while the geodesic's first
/// straight run is longer than dt); the Man moves by H dt and is projected
/// back onto the closed domain.
inline PursuitTrace simulate_pursuit(const PolygonalDomain& d, Vec2 x0, Vec2 y0, Evader evader, const PursuitOptions& opt) {
    if (!(opt.dt > 0.0) || !(opt.epsilon > 0.0) || !(opt.t_max >= 0.0))
        throw Error(ErrorCode::InvalidArgument, "dt, epsilon and t_max must be positive");
    const double hmax = max_pursuit_step(d, opt.epsilon);
    if (opt.dt > hmax * (1.0 + 1e-12))
        throw Error(ErrorCode::StepTooLarge, "dt=" + std::to_string(opt.dt) + " exceeds " + std::to_string(hmax));
    if (d.classify(x0) == Membership::exterior || d.classify(y0) == Membership::exterior)
        throw Error(ErrorCode::PointOutsideDomain, "pursuit start outside the closed domain");
    if (evader.spec().kind == EvaderKind::scripted_waypoints)
        for (const auto& w : evader.spec().waypoints)
            if (d.classify(w) == Membership::exterior) throw Error(ErrorCode::PointOutsideDomain, "waypoint outside the closed domain");

    PursuitTrace tr;
    tr.dt = opt.dt;
    tr.epsilon = opt.epsilon;
    tr.evader = evader.spec().label();
    const double tol = monotone_tolerance(d, opt.dt);
    const auto max_steps = static_cast<std::size_t>(std::floor(opt.t_max / opt.dt + 1e-9));

    Vec2 x = x0, y = y0;
    for (std::size_t k = 0;; ++k) {
        const auto path = geodesic(d, x, y);
        PursuitSample s;
        s.t = static_cast<double>(k) * opt.dt;
        s.x = x;
        s.y = y;
        s.d_intr = path.length();
        if (s.d_intr > kGeomTol) s.arrival = path.direction_at(s.d_intr);
        if (!tr.samples.empty() && opt.check_monotone) {
            const double excess = s.d_intr - tr.samples.back().d_intr;
            tr.max_monotone_excess = std::max(tr.max_monotone_excess, excess);
            if (excess > tol)
                throw Error(ErrorCode::NonmonotoneSeparation,
                            "separation grew by " + std::to_string(excess) + " at t=" + std::to_string(s.t));
        }
        if (s.d_intr <= opt.epsilon / 2.0) {
            tr.captured_at = s.t;
            tr.samples.push_back(s);
            break;
        }
        if (k >= max_steps) {
            tr.samples.push_back(s);
            break;
        }

        const Vec2 h = evader.velocity({d, k, opt.dt, x, y, path});
        Vec2 xn = path.point_at(std::min(opt.dt, s.d_intr));
        if (d.classify(xn) == Membership::exterior) xn = project_to_closure(d, xn).point;
        bool contact = false;
        const Vec2 yn = detail::man_step(d, y, h, opt.dt, contact);
        s.man_contact = contact;

        if (!tr.samples.empty()) {
            const Vec2 in = x - tr.samples.back().x, out = xn - x;
            if (norm(in) > 1e-15 && norm(out) > 1e-15) s.lion_turn = signed_angle(in, out);
        }
        tr.samples.push_back(s);
        x = xn;
        y = yn;
    }
    return tr;
}

inline PursuitTrace simulate_pursuit(const PolygonalDomain& d, Vec2 x0, Vec2 y0, const EvaderSpec& spec, const PursuitOptions& opt) {
    return simulate_pursuit(d, x0, y0, Evader(spec), opt);
}

/// Index one past the last pre-capture sample.
inline std::size_t pre_capture_end(const PursuitTrace& tr) {
    return tr.captured_at ? tr.samples.size() - 1 : tr.samples.size();
}

/// Finite-difference separation derivative against -(1 - |y'| cos a), using
/// the Man's effective (post-projection) velocity.
inline CheckReport first_variation_check(const PursuitTrace& tr, const PolygonalDomain& d, double c_fv = 2.0) {
    (void)d;
    CheckReport rep{"first_variation"};
    const std::size_t end = pre_capture_end(tr);
    if (end < 3) {
        rep.status = CheckStatus::not_applicable;
        rep.details = {{"reason", "fewer than 3 pre-capture samples"}};
        return rep;
    }
    const double dt = tr.dt;
    double worst_free = 0.0, worst_contact = 0.0, sum_measured = 0.0, sum_predicted = 0.0;
    std::size_t contacts = 0, used = 0;
    for (std::size_t k = 0; k + 1 < tr.samples.size() && k + 1 <= end; ++k) {
        const auto& s = tr.samples[k];
        const auto& n = tr.samples[k + 1];
        const Vec2 h_eff = (n.y - s.y) / dt;
        const double predicted = -(1.0 - dot(h_eff, s.arrival));
        const double measured = (n.d_intr - s.d_intr) / dt;
        const double r = std::abs(measured - predicted);
        sum_measured += measured;
        sum_predicted += predicted;
        ++used;
        if (s.man_contact) {
            ++contacts;
            worst_contact = std::max(worst_contact, r);
        } else {
            worst_free = std::max(worst_free, r);
        }
    }
    const double limit = c_fv * std::sqrt(dt);
    rep.margin = limit - worst_free;
    rep.status = worst_free <= limit ? CheckStatus::pass : CheckStatus::fail;
    rep.details = {{"max_residual", worst_free},
                   {"max_residual_at_contact", worst_contact},
                   {"contact_steps", contacts},
                   {"steps", used},
                   {"limit", limit},
                   {"mean_measured_derivative", used ? sum_measured / used : 0.0},
                   {"mean_predicted_derivative", used ? sum_predicted / used : 0.0}};
    return rep;
}

/// Running total absolute turning tau(t_k) over the pre-capture samples.
inline std::vector<double> cumulative_curvature(const PursuitTrace& tr) {
    std::vector<double> tau;
    const std::size_t end = pre_capture_end(tr);
    double acc = 0.0;
    for (std::size_t k = 0; k < end; ++k) {
        acc += std::abs(tr.samples[k].lion_turn);
        tau.push_back(acc);
    }
    return tau;
}

inline double total_curvature(const PursuitTrace& tr) {
    const auto tau = cumulative_curvature(tr);
    return tau.empty() ? 0.0 : tau.back();
}

/// Slack added to the curvature bound for accumulated rounding.
inline constexpr double kCurvatureSlack = 1e-9;

inline CheckReport curvature_bound_check(const PursuitTrace& tr, double epsilon, double diam_intr) {
    CheckReport rep{"curvature_bound"};
    const auto tau = cumulative_curvature(tr);
    double margin = std::numeric_limits<double>::infinity();
    double at = 0.0;
    // t = 0 carries no turning and a zero bound.
    for (std::size_t k = tau.size() > 1 ? 1 : 0; k < tau.size(); ++k) {
        const double t = tr.samples[k].t;
        const double m = curvature_bound(t, epsilon, diam_intr) + kCurvatureSlack - tau[k];
        if (m < margin) {
            margin = m;
            at = t;
        }
    }
    if (tau.empty()) margin = 0.0;
    rep.margin = margin;
    rep.status = margin >= 0.0 ? CheckStatus::pass : CheckStatus::fail;
    rep.details = {{"tau_total", tau.empty() ? 0.0 : tau.back()}, {"tightest_time", at}, {"samples", tau.size()}};
    return rep;
}

}  // namespace cat0
