#include "lunekit/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lunekit/tolerance.hpp"

namespace lunekit {

void ToleranceConfig::validate() const {
    if (!(tol_angle > 0.0) || !(tol_sample > 0.0))
        throw std::invalid_argument("tolerances must be positive");
    if (boundary_samples < 16)
        throw std::invalid_argument("boundary_samples must be at least 16");
}

double clamp_unit(double x) {
    return std::min(1.0, std::max(-1.0, x));
}

Angle Angle::from_radians(double r) {
    if (!std::isfinite(r) || r < 0.0 || r > M_PI + 1e-12)
        throw std::invalid_argument("angle out of [0, pi]");
    return Angle(std::min(r, M_PI));
}

SpherePoint normalize(const Vec& v) {
    const double n = v.norm();
    if (!(n > 1e-12))
        throw GeometryError("degenerate direction: norm below 1e-12");
    Vec u = v / n;
    // Canonicalize signed zeros so equal points serialize identically no
    // matter which construction produced them.
    for (Eigen::Index i = 0; i < u.size(); ++i)
        if (u[i] == 0.0) u[i] = 0.0;
    return SpherePoint(std::move(u));
}

SpherePoint adopt_unit(const Vec& v, double tol) {
    if (std::abs(v.norm() - 1.0) > tol)
        throw GeometryError("vector is not unit length");
    return SpherePoint(v);
}

double SpherePoint::dot(const SpherePoint& other) const {
    if (other.dim() != dim())
        throw std::invalid_argument("dimension mismatch");
    return coords_.dot(other.coords_);
}

SpherePoint antipode(const SpherePoint& p) {
    return SpherePoint(-p.coords());
}

Angle distance(const SpherePoint& p, const SpherePoint& q) {
    return Angle::from_radians(std::acos(clamp_unit(p.dot(q))));
}

SpherePoint geodesic(const SpherePoint& p, const SpherePoint& q, double t,
                     double tol_angle) {
    if (t < 0.0 || t > 1.0)
        throw std::invalid_argument("geodesic parameter outside [0, 1]");
    const double omega = distance(p, q).radians();
    if (omega < tol_angle)
        throw GeometryError("geodesic endpoints coincide");
    if (omega > M_PI - tol_angle)
        throw GeometryError("geodesic endpoints are antipodal");
    const double s = std::sin(omega);
    Vec v = (std::sin((1.0 - t) * omega) / s) * p.coords() +
            (std::sin(t * omega) / s) * q.coords();
    return normalize(v);
}

bool lex_less(const SpherePoint& a, const SpherePoint& b) {
    const Vec& x = a.coords();
    const Vec& y = b.coords();
    for (int i = 0; i < x.size() && i < y.size(); ++i) {
        if (x[i] < y[i]) return true;
        if (x[i] > y[i]) return false;
    }
    return x.size() < y.size();
}

bool approx_eq(const SpherePoint& a, const SpherePoint& b, double tol) {
    return distance(a, b).radians() <= tol;
}

std::vector<Vec> tangent_basis(const SpherePoint& p) {
    const int d = p.dim();
    // Complete p to an orthonormal basis by Gram-Schmidt over the standard
    // basis, skipping the most aligned axis.
    std::vector<Vec> basis;
    basis.reserve(d - 1);
    for (int axis = 0; axis < d && static_cast<int>(basis.size()) < d - 1; ++axis) {
        Vec e = Vec::Zero(d);
        e[axis] = 1.0;
        Vec v = e - p.coords() * p.coords().dot(e);
        for (const Vec& b : basis) v -= b * b.dot(v);
        const double n = v.norm();
        if (n > 1e-6) basis.push_back(v / n);
    }
    if (static_cast<int>(basis.size()) != d - 1)
        throw GeometryError("tangent basis construction failed");
    return basis;
}

SpherePoint random_sphere_point(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vec v(dim);
    do {
        for (int i = 0; i < dim; ++i) v[i] = gauss(rng);
    } while (v.norm() <= 1e-12);
    return normalize(v);
}

Vec random_tangent(const SpherePoint& p, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int d = p.dim();
    Vec v(d);
    double n = 0.0;
    do {
        for (int i = 0; i < d; ++i) v[i] = gauss(rng);
        v -= p.coords() * p.coords().dot(v);
        n = v.norm();
    } while (n <= 1e-9);
    return v / n;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag) {
    // splitmix64 step over seed xor a spread-out tag.
    std::uint64_t z = seed ^ (tag * 0x9e3779b97f4a7c15ULL);
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace lunekit
