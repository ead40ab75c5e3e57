#include "lunekit/wulff.hpp"

#include <algorithm>
#include <cmath>

#include "lunekit/hull.hpp"
#include "lunekit/polar.hpp"

namespace lunekit {

namespace {

std::vector<Vec> scaled_polar_points(const GammaField& g) {
    std::vector<Vec> pts;
    pts.reserve(g.directions.size());
    for (size_t i = 0; i < g.directions.size(); ++i)
        pts.push_back(g.directions[i].coords() / g.values[i]);
    return pts;
}

std::vector<SpherePoint> symmetrized(const std::vector<SpherePoint>& dirs) {
    std::vector<SpherePoint> out = dirs;
    for (const auto& d : dirs) out.push_back(antipode(d));
    std::sort(out.begin(), out.end(), lex_less);
    std::vector<SpherePoint> dedup;
    for (const auto& p : out)
        if (dedup.empty() || !approx_eq(dedup.back(), p, 1e-12))
            dedup.push_back(p);
    return dedup;
}

// Direction set that makes the direct dual construction exact: the field
// directions plus the outward vertex directions of the reflected shape,
// whose half-spaces are the actual facets of the dual.
std::vector<SpherePoint> enriched_dual_dirs(const WulffPolytope& w,
                                            const std::vector<SpherePoint>& dirs) {
    std::vector<SpherePoint> out = dirs;
    for (const auto& v : w.vertices)
        if (v.norm() > 1e-12) out.push_back(antipode(normalize(v)));
    std::sort(out.begin(), out.end(), lex_less);
    std::vector<SpherePoint> dedup;
    for (const auto& p : out)
        if (dedup.empty() || !approx_eq(dedup.back(), p, 1e-12))
            dedup.push_back(p);
    return dedup;
}

double max_rel_radial_gap(const WulffPolytope& a, const WulffPolytope& b,
                          const std::vector<SpherePoint>& probes,
                          bool reflect_b) {
    double worst = 0.0;
    for (const auto& u : probes) {
        const double ra = radial(a, u);
        const double rb = radial(b, reflect_b ? antipode(u) : u);
        worst = std::max(worst, std::abs(ra - rb) / std::max(ra, 1e-300));
    }
    return worst;
}

} // namespace

void validate_gamma(const GammaField& g) {
    if (g.directions.empty())
        throw std::invalid_argument("gamma field needs at least one direction");
    if (g.directions.size() != g.values.size())
        throw std::invalid_argument("gamma directions and values differ in length");
    const int d = g.directions.front().dim();
    for (const auto& dir : g.directions)
        if (dir.dim() != d)
            throw std::invalid_argument("dimension mismatch among gamma directions");
    for (const double v : g.values)
        if (!(v > 0.0) || !std::isfinite(v))
            throw GeometryError("gamma values must be strictly positive");

    std::vector<SpherePoint> sorted = g.directions;
    std::sort(sorted.begin(), sorted.end(), lex_less);
    for (size_t i = 0; i + 1 < sorted.size(); ++i)
        if (approx_eq(sorted[i], sorted[i + 1], 1e-12))
            throw GeometryError("gamma directions must be pairwise distinct");

    std::vector<Vec> raw;
    raw.reserve(g.directions.size());
    for (const auto& dir : g.directions) raw.push_back(dir.coords());
    if (max_min_margin(raw).margin > -1e-9)
        throw GeometryError(
            "unbounded shape: gamma directions do not positively span the space");
}

WulffPolytope build_wulff(const GammaField& g) {
    validate_gamma(g);
    WulffPolytope w;
    w.normals = g.directions;
    w.offsets = g.values;
    if (w.dim() != 3) return w;

    const EuclideanHull hull = convex_hull_3d(scaled_polar_points(g));
    w.redundant.resize(w.normals.size());
    for (size_t i = 0; i < w.normals.size(); ++i)
        w.redundant[i] = hull.extreme[i] ? 0 : 1;
    for (size_t f = 0; f < hull.facet_normals.size(); ++f) {
        const double b = hull.facet_offsets[f];
        if (b <= 1e-12)
            throw GeometryError("degenerate shape: origin reaches the boundary");
        w.vertices.push_back(hull.facet_normals[f] / b);
    }
    std::sort(w.vertices.begin(), w.vertices.end(),
              [](const Vec& a, const Vec& b) {
                  for (int k = 0; k < a.size(); ++k) {
                      if (a[k] < b[k]) return true;
                      if (a[k] > b[k]) return false;
                  }
                  return false;
              });
    return w;
}

double radial(const WulffPolytope& w, const SpherePoint& theta) {
    if (theta.dim() != w.dim()) throw std::invalid_argument("dimension mismatch");
    double rho = 1e300;
    for (size_t i = 0; i < w.normals.size(); ++i) {
        const double d = theta.dot(w.normals[i]);
        if (d > 1e-14) rho = std::min(rho, w.offsets[i] / d);
    }
    if (rho >= 1e300)
        throw GeometryError("unbounded direction: no constraint faces it");
    return rho;
}

GammaField dual_gamma(const WulffPolytope& w, const std::vector<SpherePoint>& dirs) {
    GammaField g;
    g.directions = dirs;
    g.values.reserve(dirs.size());
    for (const auto& d : dirs) g.values.push_back(1.0 / radial(w, antipode(d)));
    return g;
}

WulffPolytope dual_wulff(const WulffPolytope& w, const std::vector<SpherePoint>& dirs) {
    return build_wulff(dual_gamma(w, dirs));
}

WulffPolytope euclidean_polar(const WulffPolytope& w,
                              const std::vector<SpherePoint>& dirs) {
    GammaField g;
    g.directions = dirs;
    g.values.reserve(dirs.size());
    for (const auto& d : dirs) g.values.push_back(1.0 / radial(w, d));
    return build_wulff(g);
}

Vec central_project(const SpherePoint& p, double tol) {
    const int d = p.dim();
    const double h = p.coords()[d - 1];
    if (h <= tol)
        throw GeometryError("central projection undefined at or below the equator");
    Vec out(d - 1);
    for (int k = 0; k < d - 1; ++k) out[k] = p.coords()[k] / h;
    return out;
}

SpherePoint central_unproject(const Vec& x) {
    Vec lifted(x.size() + 1);
    lifted.head(x.size()) = x;
    lifted[x.size()] = 1.0;
    return normalize(lifted);
}

SphericalPolytope spherical_wulff(const WulffPolytope& w,
                                  const ToleranceConfig& cfg) {
    const int d = w.dim();
    std::vector<SpherePoint> centers;
    centers.reserve(w.normals.size());
    for (size_t i = 0; i < w.normals.size(); ++i) {
        Vec c(d + 1);
        c.head(d) = -w.normals[i].coords();
        c[d] = w.offsets[i];
        centers.push_back(normalize(c));
    }
    return from_hemispheres(centers, cfg);
}

ReflectionReport check_polar_reflection(const WulffPolytope& w,
                                        const std::vector<SpherePoint>& dirs,
                                        double tol) {
    const auto sym = symmetrized(dirs);
    const WulffPolytope dual = dual_wulff(w, sym);
    const WulffPolytope polar = euclidean_polar(w, sym);
    ReflectionReport report;
    report.max_rel_discrepancy = max_rel_radial_gap(dual, polar, sym, true);
    report.pass = report.max_rel_discrepancy <= tol;
    return report;
}

ProjectionDiagramReport check_projection_diagram(const GammaField& g,
                                                 double tol,
                                                 const ToleranceConfig& cfg) {
    cfg.validate();
    const WulffPolytope w = build_wulff(g);
    if (w.dim() != 3)
        throw GeometryError("projection diagram requires a field on S^2");

    const WulffPolytope direct = dual_wulff(w, enriched_dual_dirs(w, g.directions));

    const SphericalPolytope lift = spherical_wulff(w, cfg);
    const SphericalPolytope lift_polar = polar_polytope(lift);
    WulffPolytope projected;
    for (const auto& h : lift_polar.hcenters) {
        Vec head = h.coords().head(3);
        const double last = h.coords()[3];
        const double n = head.norm();
        if (n < 1e-14) continue;
        projected.normals.push_back(normalize(Vec(-head)));
        projected.offsets.push_back(last / n);
    }

    ProjectionDiagramReport report;
    report.directions_compared = static_cast<int>(g.directions.size());
    report.max_rel_discrepancy =
        max_rel_radial_gap(direct, projected, g.directions, false);
    report.pass = report.max_rel_discrepancy <= tol;
    return report;
}

SelfDualReport check_self_dual(const GammaField& g, double tol,
                               const ToleranceConfig& cfg) {
    cfg.validate();
    const WulffPolytope w = build_wulff(g);
    if (w.dim() != 3)
        throw GeometryError("self-duality check requires a field on S^2");

    SelfDualReport report;
    const WulffPolytope dual = dual_wulff(w, enriched_dual_dirs(w, g.directions));
    // Probe the radial identity on a dense grid on top of the field's own
    // directions; sparse fields can agree with their dual at the field
    // directions while disagreeing everywhere else.
    std::vector<SpherePoint> probes = g.directions;
    for (const auto& p : fibonacci_grid(512)) probes.push_back(p);
    report.radial_max_rel_diff = max_rel_radial_gap(w, dual, symmetrized(probes), false);
    report.radial_verdict = report.radial_max_rel_diff <= tol;

    const Body lift(spherical_wulff(w, cfg));
    const ConstancyReport cw = is_constant_width(lift, tol, cfg);
    report.lift_width_tau = cw.tau;
    report.width_verdict =
        cw.is_constant && std::abs(cw.tau - M_PI / 2.0) <= tol;

    const ConstancyReport cd = is_constant_diameter(lift, tol, cfg);
    report.lift_diameter_tau = cd.tau;
    report.diameter_verdict =
        cd.is_constant && std::abs(cd.tau - M_PI / 2.0) <= tol;

    report.consistent = report.radial_verdict == report.width_verdict &&
                        report.width_verdict == report.diameter_verdict;
    report.self_dual = report.consistent && report.radial_verdict;
    return report;
}

ThicknessSumReport thickness_sum_report(const GammaField& g, double tol,
                                        const ToleranceConfig& cfg) {
    cfg.validate();
    const WulffPolytope w = build_wulff(g);
    const Body lift(spherical_wulff(w, cfg));
    const Body lift_polar = polar_body(lift, cfg);

    ThicknessSumReport report;
    report.hypothesis_met =
        is_constant_width(lift, 5.0 * cfg.tol_sample, cfg).is_constant;

    const double width_k = thickness(lift, cfg).value.radians();
    const double diam_k = diameter(lift, cfg).value.radians();
    const double width_p = thickness(lift_polar, cfg).value.radians();
    const double diam_p = diameter(lift_polar, cfg).value.radians();

    report.sums[0] = width_k + width_p;
    report.sums[1] = width_k + diam_p;
    report.sums[2] = diam_k + width_p;
    report.sums[3] = diam_k + diam_p;
    double worst = 0.0;
    for (const double s : report.sums)
        worst = std::max(worst, std::abs(s - M_PI));
    report.max_error = worst;
    report.pass = report.hypothesis_met && worst <= tol;
    return report;
}

std::vector<SpherePoint> fibonacci_grid(int n) {
    if (n < 1) throw std::invalid_argument("grid size must be positive");
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<SpherePoint> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double z = 1.0 - (2.0 * i + 1.0) / n;
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = 2.0 * M_PI * i / golden;
        Vec v(3);
        v << r * std::cos(phi), r * std::sin(phi), z;
        out.push_back(normalize(v));
    }
    return out;
}

std::vector<SpherePoint> sphere_grid(int dim, int n) {
    if (n < 1) throw std::invalid_argument("grid size must be positive");
    if (dim == 3) return fibonacci_grid(n);
    if (dim != 4)
        throw GeometryError("direction grids support ambient dimension 3 or 4 only");

    // Kronecker torus spiral in Hopf coordinates: eta in [0, pi/2] stratifies
    // the two circle factors, angles advance by powers of the plastic number.
    const double plastic = 1.3247179572447460;
    const double g1 = 1.0 / plastic;
    const double g2 = 1.0 / (plastic * plastic);
    std::vector<SpherePoint> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double t = (i + 0.5) / n;
        const double eta = std::asin(std::sqrt(t));
        const double a = 2.0 * M_PI * std::fmod(i * g1, 1.0);
        const double b = 2.0 * M_PI * std::fmod(i * g2, 1.0);
        Vec v(4);
        v << std::cos(eta) * std::cos(a), std::cos(eta) * std::sin(a),
            std::sin(eta) * std::cos(b), std::sin(eta) * std::sin(b);
        out.push_back(normalize(v));
    }
    return out;
}

} // namespace lunekit
