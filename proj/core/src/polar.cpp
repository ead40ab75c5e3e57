#include "lunekit/polar.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lunekit/wulff.hpp"

namespace lunekit {

SphericalPolytope polar_polytope(const SphericalPolytope& k) {
    SphericalPolytope out;
    out.vertices = k.hcenters;
    out.hcenters = k.vertices;
    return out;
}

namespace {

std::string summarize(const Body& body) {
    std::ostringstream os;
    if (body.is_polytope()) {
        os << "polytope d=" << body.dim()
           << " V=" << body.polytope().vertices.size()
           << " H=" << body.polytope().hcenters.size();
    } else {
        os << "caps d=" << body.dim() << " k=" << body.cap_body().caps.size();
    }
    return os.str();
}

// Points on the boundary sphere of a cap: for S^2 an evenly spaced circle,
// for S^3 a spiral grid mapped through the tangent basis at the center.
std::vector<SpherePoint> cap_rim(const Cap& cap, int m) {
    const int d = cap.center.dim();
    const auto basis = tangent_basis(cap.center);
    const double cr = std::cos(cap.radius), sr = std::sin(cap.radius);
    std::vector<SpherePoint> out;
    out.reserve(m);
    if (d == 3) {
        for (int k = 0; k < m; ++k) {
            const double phi = 2.0 * M_PI * k / m;
            Vec v = cr * cap.center.coords() +
                    sr * (std::cos(phi) * basis[0] + std::sin(phi) * basis[1]);
            out.push_back(normalize(v));
        }
    } else if (d == 4) {
        for (const auto& g : fibonacci_grid(m)) {
            Vec v = cr * cap.center.coords();
            for (int j = 0; j < 3; ++j) v += sr * g.coords()[j] * basis[j];
            out.push_back(normalize(v));
        }
    } else {
        throw GeometryError("cap polar sampling supports ambient dimension 3 or 4 only");
    }
    return out;
}

} // namespace

Body polar_body(const Body& body, const ToleranceConfig& cfg) {
    cfg.validate();
    if (body.is_polytope()) return Body(polar_polytope(body.polytope()));

    // Polar of an intersection of caps is the spherical hull of the polar
    // caps; hull the sampled rims (plus the centers, covering the degenerate
    // hemisphere case where the polar cap is a single point).
    std::vector<SpherePoint> pts;
    for (const auto& cap : body.cap_body().caps) {
        const Cap pc = cap_polar(cap);
        pts.push_back(pc.center);
        if (!pc.degenerate())
            for (auto& p : cap_rim(pc, cfg.boundary_samples)) pts.push_back(p);
    }
    return Body(s_conv(pts, cfg));
}

bool polar_membership(const Body& body, const SpherePoint& q,
                      const ToleranceConfig& cfg) {
    cfg.validate();
    if (q.dim() != body.dim()) throw std::invalid_argument("dimension mismatch");
    if (body.is_polytope()) {
        for (const auto& v : body.polytope().vertices)
            if (q.dot(v) < -cfg.tol_angle) return false;
        return true;
    }
    const auto samples = boundary_sample(body, cfg.boundary_samples,
                                         mix_seed(cfg.seed, 0x706dULL), cfg);
    for (const auto& x : samples)
        if (q.dot(x) < -cfg.tol_sample) return false;
    return true;
}

BoundaryDualityReport check_polar_support_centers(const Body& body, int samples,
                                                  std::uint64_t seed,
                                                  const ToleranceConfig& cfg) {
    cfg.validate();
    BoundaryDualityReport report;
    report.body_summary = summarize(body);

    const Body polar = polar_body(body, cfg);
    const auto pts = boundary_sample(polar, samples, seed, cfg);
    report.samples = static_cast<int>(pts.size());

    double worst = 0.0;
    for (const auto& p : pts) {
        const auto centers = supporting_centers(polar, p, cfg);
        if (centers.empty()) {
            worst = M_PI;
            break;
        }
        for (const auto& q : centers)
            worst = std::max(worst, std::abs(membership_slack(body, q)));
    }
    report.max_violation = worst;
    report.pass = worst <= cfg.tol_sample;
    return report;
}

} // namespace lunekit
