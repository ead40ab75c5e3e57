#pragma once

#include <cstdint>

#include "lunekit/body.hpp"
#include "lunekit/wulff.hpp"

namespace lunekit {

// Single cap body.
Body gen_cap(const SpherePoint& center, double radius,
             const ToleranceConfig& cfg = {});

// Positive orthant of S^{d-1}: the spherical hull of the standard basis.
// Self-polar; diameter, width and thickness are all pi/2.
Body gen_orthant(int dim, const ToleranceConfig& cfg = {});

// Spherical Reuleaux triangle of width tau on S^2. For tau <= pi/2 this is
// the intersection of three caps of radius tau centered at the vertices of
// an equilateral triangle of side tau around the north pole (circumradius
// located by bisection). For tau > pi/2 it is the polar of the Reuleaux
// triangle of width pi - tau. Requires tau in (0, pi).
Body gen_reuleaux(double tau, const ToleranceConfig& cfg = {});

// Spherical hull of m points drawn uniformly from a cap of the given angular
// spread around a random center. spread must stay below pi/2 so the result
// is proper. Retries degenerate draws a bounded number of times.
Body gen_random_polytope(int dim, int m, double spread, std::uint64_t seed,
                         const ToleranceConfig& cfg = {});

enum class GammaKind {
    constant,   // gamma == value on a spiral grid
    perturbed,  // value * (1 + amplitude * uniform(-1,1)) per direction
    axes,       // gamma == value on the 2d signed axis directions (the box)
};

struct GammaParams {
    double value = 1.0;
    double amplitude = 0.0; // perturbed only, must stay below 1
    int grid = 200;         // ignored for axes
};

GammaField gen_gamma(GammaKind kind, int dim, const GammaParams& params,
                     std::uint64_t seed = 0);

} // namespace lunekit
