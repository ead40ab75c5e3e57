#pragma once

#include <cstdint>
#include <string>

#include "lunekit/body.hpp"

namespace lunekit {

// Spherical polar set of a polytope: {x : x.y >= 0 for all y in K}.
// Exact representation swap, so polar_polytope(polar_polytope(K)) == K.
SphericalPolytope polar_polytope(const SphericalPolytope& k);

// Polar of an arbitrary body, always materialized as a polytope. For a cap
// body the polar is the spherical hull of the polar caps; each polar cap
// boundary circle is sampled with cfg.boundary_samples points, giving an
// inner approximation with O(spacing^2) Hausdorff error.
Body polar_body(const Body& body, const ToleranceConfig& cfg = {});

// Definition-level membership test: q.v >= -tol for every vertex/defining
// point of the body. Agrees with contains(polar_body(body), q).
bool polar_membership(const Body& body, const SpherePoint& q,
                      const ToleranceConfig& cfg = {});

// Supporting-hemisphere centers of the polar body at sampled boundary points
// must come back to the boundary of the original body. Reports the largest
// membership-slack violation observed.
struct BoundaryDualityReport {
    std::string check = "polar_support_centers_on_boundary";
    std::string body_summary;
    int samples = 0;
    double max_violation = 0.0;
    bool pass = false;
};

BoundaryDualityReport check_polar_support_centers(const Body& body, int samples,
                                                  std::uint64_t seed,
                                                  const ToleranceConfig& cfg = {});

} // namespace lunekit
