#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lunekit/body.hpp"
#include "lunekit/metrics.hpp"

namespace lunekit {

// Sampled surface-energy function on S^{n}: strictly positive values over a
// finite direction set that positively spans the ambient space (so the Wulff
// shape is bounded).
struct GammaField {
    std::vector<SpherePoint> directions;
    std::vector<double> values;

    int dim() const {
        return directions.empty() ? 0 : directions.front().dim();
    }
};

void validate_gamma(const GammaField& g);

// Wulff shape of a sampled gamma: the intersection of the half-spaces
// {x : x.normal_i <= offset_i}. For ambient dimension 3 the Euclidean
// vertices are recovered at construction (through the polar point hull) and
// half-spaces that do not touch the shape are flagged redundant; other
// dimensions keep the half-space data only.
struct WulffPolytope {
    std::vector<SpherePoint> normals;
    std::vector<double> offsets;
    std::vector<Vec> vertices;      // empty unless dim == 3
    std::vector<char> redundant;    // empty unless dim == 3

    int dim() const { return normals.empty() ? 0 : normals.front().dim(); }
};

WulffPolytope build_wulff(const GammaField& g);

// Radial function: distance from the origin to the boundary along theta,
// min over positive-dot constraints of offset_i / (theta.normal_i).
double radial(const WulffPolytope& w, const SpherePoint& theta);

// Dual gamma sampled at the given directions: gamma_dual(theta) = 1 / radial(w, -theta).
GammaField dual_gamma(const WulffPolytope& w, const std::vector<SpherePoint>& dirs);

WulffPolytope dual_wulff(const WulffPolytope& w, const std::vector<SpherePoint>& dirs);

// Euclidean polar shape {x : x.y <= 1 for all y in w}, materialized from
// radially sampled boundary points at the requested directions (used by the
// reflection cross-check below).
WulffPolytope euclidean_polar(const WulffPolytope& w, const std::vector<SpherePoint>& dirs);

// Central projection of the open north hemisphere of S^{n+1} onto the
// tangent hyperplane at the north pole, and its inverse lift. unproject
// rejects points with last coordinate <= tol (equator singularity).
Vec central_project(const SpherePoint& p, double tol = 1e-9);
SpherePoint central_unproject(const Vec& x);

// Spherical Wulff shape: the lift of the Wulff half-space system to
// hemisphere constraints on S^{n+1}, with centers normalize((-normal_i, offset_i)).
// Materialized through from_hemispheres; always lands strictly inside the
// open north hemisphere.
SphericalPolytope spherical_wulff(const WulffPolytope& w,
                                  const ToleranceConfig& cfg = {});

// Reflection identity: the dual Wulff shape is the origin reflection of the
// Euclidean polar. Checked on a symmetrized direction set, where both sides
// are the same half-space system up to ordering.
struct ReflectionReport {
    double max_rel_discrepancy = 0.0;
    bool pass = false;
};
ReflectionReport check_polar_reflection(const WulffPolytope& w,
                                        const std::vector<SpherePoint>& dirs,
                                        double tol);

// Commuting-diagram check: building the dual Wulff shape by radial sampling
// agrees with lifting to the sphere, taking the spherical polar there, and
// projecting back. PASS iff the radial functions of the two routes agree at
// every field direction.
struct ProjectionDiagramReport {
    double max_rel_discrepancy = 0.0;
    int directions_compared = 0;
    bool pass = false;
};
ProjectionDiagramReport check_projection_diagram(const GammaField& g,
                                                 double tol,
                                                 const ToleranceConfig& cfg = {});

// Self-duality of the Wulff shape, decided three independent ways:
// (a) radial agreement of the shape and its dual, (b) the spherical lift has
// constant width pi/2, (c) the spherical lift has constant diameter pi/2.
// The three verdicts are required to be consistent.
struct SelfDualReport {
    bool radial_verdict = false;
    bool width_verdict = false;
    bool diameter_verdict = false;
    double radial_max_rel_diff = 0.0;
    double lift_width_tau = 0.0;
    double lift_diameter_tau = 0.0;
    bool consistent = false;
    bool self_dual = false;
};
SelfDualReport check_self_dual(const GammaField& g, double tol,
                               const ToleranceConfig& cfg = {});

// For a lift of constant width: the four sums of {width, diameter} of the
// lift with {width, diameter} of its polar all equal pi.
struct ThicknessSumReport {
    bool hypothesis_met = false;
    double sums[4] = {0, 0, 0, 0};
    double max_error = 0.0;
    bool pass = false;
};
ThicknessSumReport thickness_sum_report(const GammaField& g, double tol,
                                        const ToleranceConfig& cfg = {});

// Deterministic Fibonacci-spiral direction grid on S^2.
std::vector<SpherePoint> fibonacci_grid(int n);

// Direction grid on S^{d-1}: the spiral grid for d = 3, a double-spiral
// product construction for d = 4.
std::vector<SpherePoint> sphere_grid(int dim, int n);

} // namespace lunekit
