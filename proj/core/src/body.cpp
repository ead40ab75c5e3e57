#include "lunekit/body.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lunekit/hull.hpp"
#include "flat.hpp"

namespace lunekit {

namespace {

// Merge points closer than tol_angle, keeping the lexicographically smallest
// representative of each cluster, and return the survivors sorted.
std::vector<SpherePoint> dedup_sorted(std::vector<SpherePoint> pts, double tol) {
    std::sort(pts.begin(), pts.end(), lex_less);
    std::vector<SpherePoint> out;
    for (const auto& p : pts) {
        bool dup = false;
        for (auto it = out.rbegin(); it != out.rend(); ++it) {
            if (p.coords()[0] - it->coords()[0] > tol) break;
            if (approx_eq(*it, p, tol)) { dup = true; break; }
        }
        if (!dup) out.push_back(p);
    }
    return out;
}

void check_same_dim(const std::vector<SpherePoint>& pts) {
    for (const auto& p : pts)
        if (p.dim() != pts.front().dim())
            throw std::invalid_argument("dimension mismatch among points");
}

std::vector<Vec> raw(const std::vector<SpherePoint>& pts) {
    std::vector<Vec> v;
    v.reserve(pts.size());
    for (const auto& p : pts) v.push_back(p.coords());
    return v;
}

std::vector<SpherePoint> to_sorted_points(const std::vector<Vec>& vecs) {
    std::vector<SpherePoint> pts;
    pts.reserve(vecs.size());
    for (const Vec& v : vecs) pts.push_back(normalize(v));
    std::sort(pts.begin(), pts.end(), lex_less);
    return pts;
}

// Maximal-slack ascent for cap bodies: pushes x toward the deepest interior
// by following the most violated / least satisfied cap center.
SpherePoint max_slack_point(const CapIntersectionBody& body, const SpherePoint& start) {
    Vec x = start.coords();
    double step = 0.5;
    auto slack_at = [&](const Vec& y) {
        double m = 1e300;
        for (const auto& c : body.caps)
            m = std::min(m, y.dot(c.center.coords()) - std::cos(c.radius));
        return m;
    };
    double best = slack_at(x);
    for (int iter = 0; iter < 400 && step > 1e-12; ++iter) {
        int active = 0;
        double m = 1e300;
        for (size_t i = 0; i < body.caps.size(); ++i) {
            const double s = x.dot(body.caps[i].center.coords()) - std::cos(body.caps[i].radius);
            if (s < m) { m = s; active = static_cast<int>(i); }
        }
        const Vec& c = body.caps[active].center.coords();
        Vec g = c - x * x.dot(c);
        if (g.norm() < 1e-15) break;
        Vec cand = x + step * g;
        cand.normalize();
        const double s = slack_at(cand);
        if (s > best) {
            best = s;
            x = cand;
        } else {
            step *= 0.6;
        }
    }
    return normalize(x);
}

} // namespace

SphericalPolytope s_conv(const std::vector<SpherePoint>& points,
                         const ToleranceConfig& cfg) {
    cfg.validate();
    if (points.empty()) throw GeometryError("empty interior: no points");
    check_same_dim(points);
    const auto pts = dedup_sorted(points, cfg.tol_angle);
    const ConeHull hull = cone_hull(raw(pts), cfg.tol_angle);

    SphericalPolytope out;
    for (size_t i = 0; i < pts.size(); ++i)
        if (hull.extreme[i]) out.vertices.push_back(pts[i]);
    std::sort(out.vertices.begin(), out.vertices.end(), lex_less);
    out.hcenters = to_sorted_points(hull.facet_normals);
    return out;
}

SphericalPolytope from_hemispheres(const std::vector<SpherePoint>& centers,
                                   const ToleranceConfig& cfg) {
    cfg.validate();
    if (centers.empty()) throw GeometryError("improper body: no hemisphere constraints");
    check_same_dim(centers);
    const auto pts = dedup_sorted(centers, cfg.tol_angle);
    const int d = pts.front().dim();

    // The intersection of the hemispheres is the dual cone of the centers'
    // cone, so the conditions swap relative to s_conv: a rank deficit means
    // the intersection contains a great subsphere (improper), and a center
    // set whose hull reaches the origin means the intersection has empty
    // interior.
    if (span_rank(raw(pts)) < d)
        throw GeometryError("improper body: hemisphere intersection contains antipodal points");
    {
        const MarginResult m = max_min_margin(raw(pts));
        if (m.margin <= cfg.tol_angle)
            throw GeometryError("empty interior: hemisphere constraints admit no strict point");
    }

    const ConeHull hull = cone_hull(raw(pts), cfg.tol_angle);
    SphericalPolytope out;
    out.vertices = to_sorted_points(hull.facet_normals);
    for (size_t i = 0; i < pts.size(); ++i)
        if (hull.extreme[i]) out.hcenters.push_back(pts[i]);
    std::sort(out.hcenters.begin(), out.hcenters.end(), lex_less);
    return out;
}

Body make_cap_body(const std::vector<Cap>& caps, const ToleranceConfig& cfg) {
    cfg.validate();
    if (caps.empty()) throw GeometryError("cap body needs at least one cap");
    const int d = caps.front().center.dim();
    for (const auto& c : caps) {
        if (c.center.dim() != d)
            throw std::invalid_argument("dimension mismatch among caps");
        if (c.degenerate() || c.radius > M_PI / 2.0 + 1e-12)
            throw GeometryError("cap radius outside (0, pi/2]");
    }

    CapIntersectionBody body{caps};

    // Interior point with strict slack in every cap.
    Vec mean = Vec::Zero(d);
    for (const auto& c : caps) mean += c.center.coords();
    SpherePoint candidate = (mean.norm() > 1e-12) ? normalize(mean) : caps.front().center;
    candidate = max_slack_point(body, candidate);
    {
        double m = 1e300;
        for (const auto& c : caps)
            m = std::min(m, candidate.dot(c.center) - std::cos(c.radius));
        if (m <= cfg.tol_angle)
            throw GeometryError("empty interior: caps admit no strict common point");
    }

    // Properness: a single sub-hemispherical cap already confines the body;
    // otherwise the centers must span (pointed hemisphere intersection);
    // otherwise fall back on a sampled margin certificate.
    bool proper = false;
    for (const auto& c : caps)
        if (c.radius < M_PI / 2.0 - cfg.tol_angle) { proper = true; break; }
    if (!proper) {
        std::vector<Vec> centers;
        for (const auto& c : caps) centers.push_back(c.center.coords());
        if (span_rank(centers) == d) proper = true;
    }
    if (!proper) {
        Body tmp(body);
        const auto samples = boundary_sample(tmp, 128, mix_seed(cfg.seed, 0x9a9bULL), cfg);
        const MarginResult m = max_min_margin(raw(samples));
        proper = m.margin > cfg.tol_angle;
    }
    if (!proper)
        throw GeometryError("improper body: cap intersection is not contained in an open hemisphere");

    return Body(body);
}

bool contains(const Body& body, const SpherePoint& q, const ToleranceConfig& cfg) {
    if (q.dim() != body.dim()) throw std::invalid_argument("dimension mismatch");
    return membership_slack(body, q) >= -cfg.tol_angle;
}

double membership_slack(const Body& body, const SpherePoint& q) {
    double m = 1e300;
    if (body.is_polytope()) {
        for (const auto& h : body.polytope().hcenters)
            m = std::min(m, h.dot(q));
    } else {
        for (const auto& c : body.cap_body().caps)
            m = std::min(m, q.dot(c.center) - std::cos(c.radius));
    }
    return m;
}

SpherePoint interior_point(const Body& body, const ToleranceConfig& cfg) {
    if (body.is_polytope()) {
        Vec sum = Vec::Zero(body.dim());
        for (const auto& v : body.polytope().vertices) sum += v.coords();
        SpherePoint c = normalize(sum);
        if (membership_slack(body, c) > 0.0) return c;
        // A proper polytope always admits the vertex centroid as interior
        // point; reaching here means numerical trouble.
        throw GeometryError("interior point search failed");
    }
    Vec mean = Vec::Zero(body.dim());
    for (const auto& c : body.cap_body().caps) mean += c.center.coords();
    SpherePoint candidate =
        (mean.norm() > 1e-12) ? normalize(mean) : body.cap_body().caps.front().center;
    if (membership_slack(body, candidate) > 0.0) return candidate;
    candidate = max_slack_point(body.cap_body(), candidate);
    if (membership_slack(body, candidate) <= 0.0)
        throw GeometryError("interior point search failed");
    return candidate;
}

namespace {

SpherePoint boundary_point_flat(const detail::FlatConstraints& cons,
                                const SpherePoint& c, const Vec& u,
                                double tol_angle) {
    const int d = cons.dim;
    std::vector<double> x(d);
    auto at = [&](double t) -> const double* {
        const double ct = std::cos(t), st = std::sin(t);
        for (int k = 0; k < d; ++k) x[k] = ct * c.coords()[k] + st * u[k];
        return x.data();
    };
    const double eps = 1e-12;
    if (!cons.inside(at(0.0), 1e-9))
        throw GeometryError("boundary search needs an interior base point");
    double lo = 0.0, hi = M_PI - 1e-9;
    if (cons.inside(at(hi), eps))
        throw GeometryError("improper body: boundary ray never exits");
    while (hi - lo > tol_angle) {
        const double mid = 0.5 * (lo + hi);
        if (cons.inside(at(mid), eps))
            lo = mid;
        else
            hi = mid;
    }
    const double t = 0.5 * (lo + hi);
    Vec out(d);
    const double ct = std::cos(t), st = std::sin(t);
    for (int k = 0; k < d; ++k) out[k] = ct * c.coords()[k] + st * u[k];
    return normalize(out);
}

} // namespace

SpherePoint boundary_point(const Body& body, const SpherePoint& c, const Vec& u,
                           const ToleranceConfig& cfg) {
    if (c.dim() != body.dim() || static_cast<int>(u.size()) != body.dim())
        throw std::invalid_argument("dimension mismatch");
    Vec ut = u - c.coords() * c.coords().dot(u);
    const double n = ut.norm();
    if (n < 1e-12) throw std::invalid_argument("tangent direction degenerate");
    ut /= n;
    const auto cons = detail::FlatConstraints::from_body(body);
    return boundary_point_flat(cons, c, ut, cfg.tol_angle);
}

std::vector<SpherePoint> boundary_sample(const Body& body, int m,
                                         std::uint64_t seed,
                                         const ToleranceConfig& cfg) {
    if (m < 0) throw std::invalid_argument("negative sample count");
    std::vector<SpherePoint> out;
    if (m == 0) return out;
    const SpherePoint c = interior_point(body, cfg);
    const auto cons = detail::FlatConstraints::from_body(body);
    std::mt19937_64 rng(seed);
    out.reserve(m);
    for (int i = 0; i < m; ++i) {
        const Vec u = random_tangent(c, rng);
        out.push_back(boundary_point_flat(cons, c, u, cfg.tol_angle));
    }
    return out;
}

std::vector<SpherePoint> supporting_centers(const Body& body,
                                            const SpherePoint& p,
                                            const ToleranceConfig& cfg) {
    if (p.dim() != body.dim()) throw std::invalid_argument("dimension mismatch");
    const double active_tol = std::max(1e-8, 16.0 * cfg.tol_angle);
    std::vector<SpherePoint> out;
    if (body.is_polytope()) {
        for (const auto& h : body.polytope().hcenters)
            if (std::abs(h.dot(p)) <= active_tol) out.push_back(h);
    } else {
        for (const auto& c : body.cap_body().caps) {
            const double gap = distance(c.center, p).radians() - c.radius;
            if (std::abs(gap) <= active_tol) {
                // Rotate the cap center a quarter turn along the great circle
                // through p, so it lands on p's polar great circle while
                // keeping the body on the positive side.
                Vec q = c.center.coords() - std::cos(c.radius) * p.coords();
                out.push_back(normalize(q));
            }
        }
    }
    std::sort(out.begin(), out.end(), lex_less);
    return out;
}

} // namespace lunekit
