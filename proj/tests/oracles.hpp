#pragma once
// Test-side reference implementations.  Nothing here calls into the library's
// geometry or metric code.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <queue>
#include <unordered_map>
#include <vector>

namespace oracle {

struct P {
    double x = 0.0, y = 0.0;
};

inline double cr(P o, P a, P b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }
inline double dist(P a, P b) { return std::hypot(a.x - b.x, a.y - b.y); }

inline double seg_dist(P p, P a, P b) {
    const double vx = b.x - a.x, vy = b.y - a.y;
    const double L2 = vx * vx + vy * vy;
    double t = L2 > 0 ? ((p.x - a.x) * vx + (p.y - a.y) * vy) / L2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(p.x - a.x - t * vx, p.y - a.y - t * vy);
}

/// Closed simple polygon, any orientation.
class Polygon {
public:
    explicit Polygon(std::vector<P> v) : v_(std::move(v)) {}

    const std::vector<P>& vertices() const { return v_; }

    bool in_closure(P p, double tol = 1e-10) const {
        const std::size_t n = v_.size();
        for (std::size_t i = 0; i < n; ++i)
            if (seg_dist(p, v_[i], v_[(i + 1) % n]) <= tol) return true;
        bool in = false;
        for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
            const P a = v_[i], b = v_[j];
            if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) in = !in;
        }
        return in;
    }

    /// Segment contained in the closed polygon: no proper crossing with an
    /// edge, and every sub-interval between boundary contacts has its
    /// midpoint in the closure.
    bool segment_inside(P a, P b, double tol = 1e-10) const {
        const std::size_t n = v_.size();
        std::vector<double> ts{0.0, 1.0};
        const double vx = b.x - a.x, vy = b.y - a.y, L2 = vx * vx + vy * vy;
        for (std::size_t i = 0; i < n; ++i) {
            const P c = v_[i], e = v_[(i + 1) % n];
            const double d1 = cr(a, b, c), d2 = cr(a, b, e), d3 = cr(c, e, a), d4 = cr(c, e, b);
            const double s = std::sqrt(L2) * dist(c, e) * 1e-12;
            if (((d1 > s && d2 < -s) || (d1 < -s && d2 > s)) && ((d3 > s && d4 < -s) || (d3 < -s && d4 > s)))
                return false;
            if (L2 > 0) {
                for (P q : {c, e})
                    if (seg_dist(q, a, b) <= tol) ts.push_back(((q.x - a.x) * vx + (q.y - a.y) * vy) / L2);
            }
        }
        std::sort(ts.begin(), ts.end());
        for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
            const double m = 0.5 * (ts[i] + ts[i + 1]);
            if (!in_closure({a.x + m * vx, a.y + m * vy}, tol)) return false;
        }
        return true;
    }

private:
    std::vector<P> v_;
};

/// Shortest lattice path in the closed polygon with moves (dx, dy), |dx|,
/// |dy| <= 4 and gcd 1, at the given pitch.  Endpoints attach to every
/// visible lattice node within two pitches.  A straight contained segment
/// is returned exactly.
class GridDijkstra {
public:
    GridDijkstra(std::vector<P> vertices, double pitch) : poly_(std::move(vertices)), h_(pitch) {
        const auto& v = poly_.vertices();
        ox_ = v[0].x;
        oy_ = v[0].y;
        double x0 = v[0].x, x1 = x0, y0 = v[0].y, y1 = y0;
        for (auto p : v) {
            x0 = std::min(x0, p.x); x1 = std::max(x1, p.x);
            y0 = std::min(y0, p.y); y1 = std::max(y1, p.y);
        }
        i0_ = static_cast<int>(std::floor((x0 - ox_) / h_)) - 1;
        i1_ = static_cast<int>(std::ceil((x1 - ox_) / h_)) + 1;
        j0_ = static_cast<int>(std::floor((y0 - oy_) / h_)) - 1;
        j1_ = static_cast<int>(std::ceil((y1 - oy_) / h_)) + 1;
        nx_ = i1_ - i0_ + 1;
        ny_ = j1_ - j0_ + 1;
        inside_.resize(static_cast<std::size_t>(nx_) * ny_);
        for (int i = i0_; i <= i1_; ++i)
            for (int j = j0_; j <= j1_; ++j) inside_[id(i, j)] = poly_.in_closure(at(i, j));
        for (int dx = -4; dx <= 4; ++dx)
            for (int dy = -4; dy <= 4; ++dy)
                if ((dx || dy) && std::gcd(std::abs(dx), std::abs(dy)) == 1) moves_.push_back({dx, dy});
    }

    double distance(P a, P b) const {
        if (poly_.segment_inside(a, b)) return dist(a, b);
        const int n = nx_ * ny_;
        const int src = n, dst = n + 1;
        std::vector<double> g(n + 2, INFINITY);
        std::vector<char> done(n + 2, 0);
        using Item = std::pair<double, int>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        auto heur = [&](int k) { return k == dst ? 0.0 : dist(pos(k, a, b), b); };
        auto relax = [&](int k, double c) {
            if (c < g[k]) {
                g[k] = c;
                pq.push({c + heur(k), k});
            }
        };
        g[src] = 0.0;
        pq.push({heur(src), src});
        const auto near_b = attach(b);
        std::vector<char> is_near_b(n, 0);
        for (int k : near_b) is_near_b[k] = 1;
        while (!pq.empty()) {
            const auto [f, k] = pq.top();
            pq.pop();
            if (done[k]) continue;
            done[k] = 1;
            if (k == dst) return g[dst];
            if (k == src) {
                for (int m : attach(a)) relax(m, dist(a, pos(m, a, b)));
                continue;
            }
            const int i = k / ny_ + i0_, j = k % ny_ + j0_;
            const P p = at(i, j);
            if (is_near_b[k]) relax(dst, g[k] + dist(p, b));
            for (auto [dx, dy] : moves_) {
                const int ii = i + dx, jj = j + dy;
                if (ii < i0_ || ii > i1_ || jj < j0_ || jj > j1_) continue;
                const int m = id(ii, jj);
                if (!inside_[m] || done[m]) continue;
                const P q = at(ii, jj);
                if (!poly_.segment_inside(p, q)) continue;
                relax(m, g[k] + h_ * std::hypot(dx, dy));
            }
        }
        return INFINITY;
    }

private:
    int id(int i, int j) const { return (i - i0_) * ny_ + (j - j0_); }
    P at(int i, int j) const { return {ox_ + i * h_, oy_ + j * h_}; }
    P pos(int k, P a, P b) const {
        if (k == nx_ * ny_) return a;
        if (k == nx_ * ny_ + 1) return b;
        return at(k / ny_ + i0_, k % ny_ + j0_);
    }

    std::vector<int> attach(P p) const {
        std::vector<int> out;
        const int ci = static_cast<int>(std::floor((p.x - ox_) / h_)), cj = static_cast<int>(std::floor((p.y - oy_) / h_));
        for (int i = ci - 2; i <= ci + 3; ++i)
            for (int j = cj - 2; j <= cj + 3; ++j) {
                if (i < i0_ || i > i1_ || j < j0_ || j > j1_) continue;
                const int k = id(i, j);
                if (inside_[k] && poly_.segment_inside(p, at(i, j))) out.push_back(k);
            }
        return out;
    }

    Polygon poly_;
    double h_, ox_, oy_;
    int i0_, i1_, j0_, j1_, nx_, ny_;
    std::vector<char> inside_;
    std::vector<std::pair<int, int>> moves_;
};

/// Positive root of f on (lo, hi) by bisection; f(lo) < 0 < f(hi).
inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
    for (int i = 0; i < 200; ++i) {
        const double m = 0.5 * (lo + hi);
        (f(m) < 0 ? lo : hi) = m;
    }
    return 0.5 * (lo + hi);
}

/// Capture time from the curvature inequality written in t:
/// (pi/2)(1/(sqrt2 D) - 1/t) = (2 sqrt2/eps) sqrt(D - eps/2) / sqrt(t).
inline double capture_time(double D, double eps) {
    const double pi = std::acos(-1.0);
    auto f = [&](double t) {
        return pi / 2 * (1 / (std::sqrt(2.0) * D) - 1 / t) - 2 * std::sqrt(2.0) / eps * std::sqrt(D - eps / 2) / std::sqrt(t);
    };
    double hi = 1.0;
    while (f(hi) < 0) hi *= 2;
    return bisect(f, 1e-9, hi);
}

/// Max over directions of |P(x + a u) - x| for x on a circle of radius r and
/// P the radial projection back onto the circle, by dense search.
inline double projected_step_brute(double a, double r, int n = 200000) {
    const double pi = std::acos(-1.0);
    double best = 0.0;
    for (int k = 0; k <= n; ++k) {
        const double th = pi / 2 + pi * k / n;  // inward half-plane at x = (r, 0)
        const double zx = r + a * std::cos(th), zy = a * std::sin(th);
        const double rho = std::hypot(zx, zy);
        if (rho >= r) continue;
        const double px = zx * r / rho, py = zy * r / rho;
        best = std::max(best, std::hypot(px - r, py));
    }
    return best;
}

}  // namespace oracle
