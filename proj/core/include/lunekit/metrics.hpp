#pragma once

#include <optional>
#include <utility>

#include "lunekit/body.hpp"
#include "lunekit/polar.hpp"

namespace lunekit {

enum class ExtremizationMethod { exact_vertices, sampled };

struct WidthReport {
    Angle value = Angle::from_radians(0.0);
    std::pair<SpherePoint, SpherePoint> witness_pair;
    ExtremizationMethod method = ExtremizationMethod::exact_vertices;
};

struct ConstancyReport {
    bool is_constant = false;
    double tau = 0.0;
    double max_deviation = 0.0;
    int samples_used = 0;
};

// Largest geodesic distance between two points of the body. Polytopes are
// extremized exactly over vertex pairs (valid as long as the diameter stays
// safely below pi; bodies with diameter above pi - tol_sample are rejected
// as degenerate). Cap bodies are extremized over boundary samples followed
// by alternating geodesic hill-climbs. Ties go to the lexicographically
// smallest witness pair.
WidthReport diameter(const Body& body, const ToleranceConfig& cfg = {});

// Point of the body at maximal distance from p, same extremization split.
WidthReport farthest_point(const Body& body, const SpherePoint& p,
                           const ToleranceConfig& cfg = {});

// Width of the body relative to a supporting hemisphere around p: thickness
// of the thinnest lune S_p+ cut by a second supporting hemisphere. Computed
// as pi - distance(p, farthest point of the polar body) and cross-checked by
// direct constrained descent (minimize p.q over the dual constraints, eight
// seeded restarts); the two routes must agree.
WidthReport width_wrt(const Body& body, const SpherePoint& p,
                      const ToleranceConfig& cfg = {});

// Both width routes side by side, for agreement tests.
struct WidthRoutes {
    double via_polar_farthest;
    double via_constrained_descent;
};
WidthRoutes width_wrt_routes(const Body& body, const SpherePoint& p,
                             const ToleranceConfig& cfg = {});

// Minimal width over supporting hemispheres. Primary route: pi - diameter of
// the polar body; cross-checked by minimizing width_wrt over sampled
// supporting centers.
WidthReport thickness(const Body& body, const ToleranceConfig& cfg = {});

struct ThicknessRoutes {
    double via_polar_diameter;
    double via_sampled_widths;
};
ThicknessRoutes thickness_routes(const Body& body, const ToleranceConfig& cfg = {});

// Every boundary point sees some farthest point at distance tau = diameter.
ConstancyReport is_constant_diameter(const Body& body, double tol,
                                     const ToleranceConfig& cfg = {});

// Width is the same relative to every supporting hemisphere.
ConstancyReport is_constant_width(const Body& body, double tol,
                                  const ToleranceConfig& cfg = {});

// Equivalence harness: a proper body is constant diameter tau iff it is
// constant width tau. When the body is constant width, also checks that the
// polar body has constant width and constant diameter pi - tau.
struct ConstancyEquivalenceReport {
    ConstancyReport constant_diameter;
    ConstancyReport constant_width;
    bool verdicts_agree = false;
    bool tau_agree = true; // only meaningful when both verdicts are true
    std::optional<ConstancyReport> polar_constant_width;
    std::optional<ConstancyReport> polar_constant_diameter;
    bool polar_checks_pass = true;
    bool pass = false;
};

ConstancyEquivalenceReport check_constancy_equivalence(const Body& body,
                                                       double tol,
                                                       const ToleranceConfig& cfg = {});

} // namespace lunekit
