#pragma once

// Internal flat-array mirrors of body data for the hot loops (membership
// bisection, pairwise extremization). Not installed.

#include <cmath>
#include <cstddef>
#include <vector>

#include "lunekit/body.hpp"

namespace lunekit::detail {

// Constraint system rows r_i with offsets o_i; a point x satisfies the body
// membership iff min_i (r_i . x - o_i) >= -eps. Polytopes contribute their
// H-centers with zero offsets, cap bodies their cap centers with cos(radius).
struct FlatConstraints {
    int dim = 0;
    std::size_t count = 0;
    std::vector<double> rows; // count x dim, row-major
    std::vector<double> offs;

    static FlatConstraints from_body(const Body& body) {
        FlatConstraints f;
        f.dim = body.dim();
        if (body.is_polytope()) {
            const auto& hs = body.polytope().hcenters;
            f.count = hs.size();
            f.rows.reserve(f.count * f.dim);
            f.offs.assign(f.count, 0.0);
            for (const auto& h : hs)
                for (int k = 0; k < f.dim; ++k) f.rows.push_back(h.coords()[k]);
        } else {
            const auto& caps = body.cap_body().caps;
            f.count = caps.size();
            f.rows.reserve(f.count * f.dim);
            f.offs.reserve(f.count);
            for (const auto& c : caps) {
                for (int k = 0; k < f.dim; ++k) f.rows.push_back(c.center.coords()[k]);
                f.offs.push_back(std::cos(c.radius));
            }
        }
        return f;
    }

    double slack(const double* x) const {
        double m = 1e300;
        const double* r = rows.data();
        for (std::size_t i = 0; i < count; ++i, r += dim) {
            double d = -offs[i];
            for (int k = 0; k < dim; ++k) d += r[k] * x[k];
            if (d < m) m = d;
        }
        return m;
    }

    bool inside(const double* x, double eps) const {
        const double* r = rows.data();
        for (std::size_t i = 0; i < count; ++i, r += dim) {
            double d = -offs[i];
            for (int k = 0; k < dim; ++k) d += r[k] * x[k];
            if (d < -eps) return false;
        }
        return true;
    }
};

struct FlatPoints {
    int dim = 0;
    std::size_t count = 0;
    std::vector<double> data; // count x dim, row-major

    static FlatPoints from_points(const std::vector<SpherePoint>& pts) {
        FlatPoints f;
        if (pts.empty()) return f;
        f.dim = pts.front().dim();
        f.count = pts.size();
        f.data.reserve(f.count * f.dim);
        for (const auto& p : pts)
            for (int k = 0; k < f.dim; ++k) f.data.push_back(p.coords()[k]);
        return f;
    }

    const double* row(std::size_t i) const { return data.data() + i * dim; }

    double dot(std::size_t i, const double* x) const {
        const double* r = row(i);
        double d = 0.0;
        for (int k = 0; k < dim; ++k) d += r[k] * x[k];
        return d;
    }
};

} // namespace lunekit::detail
