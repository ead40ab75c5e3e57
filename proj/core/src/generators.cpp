#include "lunekit/generators.hpp"

#include <cmath>

#include "lunekit/polar.hpp"

namespace lunekit {

namespace {

// Equilateral triangle side as a function of circumradius, for vertices at
// polar angle R spaced 120 degrees apart.
double triangle_side(double R) {
    const double c = std::cos(R), s = std::sin(R);
    return std::acos(clamp_unit(c * c - 0.5 * s * s));
}

double circumradius_for_side(double side) {
    double lo = 1e-9, hi = M_PI / 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (triangle_side(mid) < side)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Radial angle of a uniform draw from a cap of the given radius, inverted
// from the sin^(d-2) area density.
double random_cap_angle(int dim, double radius, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double u = uni(rng);
    if (dim == 3) return std::acos(clamp_unit(1.0 - u * (1.0 - std::cos(radius))));
    auto cdf = [](double t) { return t - std::sin(t) * std::cos(t); };
    const double target = u * cdf(radius);
    double lo = 0.0, hi = radius;
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (cdf(mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

Body gen_cap(const SpherePoint& center, double radius, const ToleranceConfig& cfg) {
    return make_cap_body({make_cap(center, radius)}, cfg);
}

Body gen_orthant(int dim, const ToleranceConfig& cfg) {
    std::vector<SpherePoint> basis;
    basis.reserve(dim);
    for (int k = 0; k < dim; ++k) {
        Vec e = Vec::Zero(dim);
        e[k] = 1.0;
        basis.push_back(normalize(e));
    }
    return Body(s_conv(basis, cfg));
}

Body gen_reuleaux(double tau, const ToleranceConfig& cfg) {
    if (!(tau > 0.0) || !(tau < M_PI))
        throw std::invalid_argument("width must lie in (0, pi)");
    if (tau > M_PI / 2.0)
        return polar_body(gen_reuleaux(M_PI - tau, cfg), cfg);

    const double R = circumradius_for_side(tau);
    std::vector<Cap> caps;
    for (int k = 0; k < 3; ++k) {
        const double phi = 2.0 * M_PI * k / 3.0;
        Vec v(3);
        v << std::sin(R) * std::cos(phi), std::sin(R) * std::sin(phi), std::cos(R);
        caps.push_back(make_cap(normalize(v), tau));
    }
    return make_cap_body(caps, cfg);
}

Body gen_random_polytope(int dim, int m, double spread, std::uint64_t seed,
                         const ToleranceConfig& cfg) {
    if (m < dim) throw std::invalid_argument("too few points for a full body");
    if (!(spread > 0.0) || !(spread < M_PI / 2.0))
        throw std::invalid_argument("spread must lie in (0, pi/2)");

    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 8; ++attempt) {
        const SpherePoint center = random_sphere_point(dim, rng);
        std::vector<SpherePoint> pts;
        pts.reserve(m);
        for (int i = 0; i < m; ++i) {
            const double psi = random_cap_angle(dim, spread, rng);
            const Vec u = random_tangent(center, rng);
            pts.push_back(normalize(std::cos(psi) * center.coords() +
                                    std::sin(psi) * u));
        }
        try {
            return Body(s_conv(pts, cfg));
        } catch (const GeometryError&) {
            if (attempt == 7) throw;
        }
    }
    throw GeometryError("random polytope generation failed");
}

GammaField gen_gamma(GammaKind kind, int dim, const GammaParams& params,
                     std::uint64_t seed) {
    if (!(params.value > 0.0))
        throw std::invalid_argument("gamma value must be positive");
    GammaField g;
    switch (kind) {
    case GammaKind::constant:
        g.directions = sphere_grid(dim, params.grid);
        g.values.assign(g.directions.size(), params.value);
        break;
    case GammaKind::perturbed: {
        if (!(params.amplitude >= 0.0) || !(params.amplitude < 1.0))
            throw std::invalid_argument("amplitude must lie in [0, 1)");
        g.directions = sphere_grid(dim, params.grid);
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        g.values.reserve(g.directions.size());
        for (size_t i = 0; i < g.directions.size(); ++i)
            g.values.push_back(params.value * (1.0 + params.amplitude * uni(rng)));
        break;
    }
    case GammaKind::axes:
        for (int k = 0; k < dim; ++k)
            for (const double sign : {1.0, -1.0}) {
                Vec e = Vec::Zero(dim);
                e[k] = sign;
                g.directions.push_back(normalize(e));
                g.values.push_back(params.value);
            }
        break;
    }
    return g;
}

} // namespace lunekit
