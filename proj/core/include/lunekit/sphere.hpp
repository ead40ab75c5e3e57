#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <vector>

#include "lunekit/errors.hpp"

namespace lunekit {

using Vec = Eigen::VectorXd;

// Angle in radians, restricted to [0, pi]. Every spherical distance, radius,
// width and thickness in the library fits in this range.
class Angle {
public:
    static Angle from_radians(double r);
    double radians() const { return radians_; }

private:
    explicit Angle(double r) : radians_(r) {}
    double radians_;
};

// Unit vector in R^d, d >= 2, identified with a point of S^{d-1}.
// Construction always goes through normalize(), so the unit invariant holds
// up to 1e-12.
class SpherePoint {
public:
    const Vec& coords() const { return coords_; }
    int dim() const { return static_cast<int>(coords_.size()); }
    double dot(const SpherePoint& other) const;

    friend SpherePoint normalize(const Vec& v);
    friend SpherePoint antipode(const SpherePoint& p);
    friend SpherePoint adopt_unit(const Vec& v, double tol);

private:
    explicit SpherePoint(Vec c) : coords_(std::move(c)) {}
    Vec coords_;
};

// Projects a nonzero vector to the unit sphere. Throws GeometryError for
// vectors with norm below 1e-12 ("degenerate direction").
SpherePoint normalize(const Vec& v);

// Adopts an already-unit vector bit for bit (deserialization must not
// perturb stored coordinates by renormalizing). Throws GeometryError when
// the norm is off by more than tol.
SpherePoint adopt_unit(const Vec& v, double tol = 1e-9);

SpherePoint antipode(const SpherePoint& p);

// Geodesic (great-circle) distance arccos(P.Q), with the dot product clamped
// to [-1, 1] before arccos.
Angle distance(const SpherePoint& p, const SpherePoint& q);

// Point at parameter t in [0, 1] on the minor great-circle arc from p to q.
// Requires p != q and p != -q within tol_angle, else the arc is not unique.
SpherePoint geodesic(const SpherePoint& p, const SpherePoint& q, double t,
                     double tol_angle = 1e-9);

double clamp_unit(double x);

// True if a.coords() precedes b.coords() lexicographically.
bool lex_less(const SpherePoint& a, const SpherePoint& b);

bool approx_eq(const SpherePoint& a, const SpherePoint& b, double tol);

// Orthonormal basis of the tangent space at p (d-1 vectors orthogonal to p).
std::vector<Vec> tangent_basis(const SpherePoint& p);

// Uniform random point of S^{d-1} (normalized Gaussian deviates).
SpherePoint random_sphere_point(int dim, std::mt19937_64& rng);

// Uniform random unit tangent direction at p.
Vec random_tangent(const SpherePoint& p, std::mt19937_64& rng);

// Deterministic mixing of a base seed with a stream tag, so independent
// sampling sites inside one operation draw from decorrelated streams.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag);

} // namespace lunekit
