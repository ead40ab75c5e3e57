#include "lunekit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "flat.hpp"

namespace lunekit {

namespace {

std::uint64_t hash_point(const SpherePoint& p) {
    std::uint64_t h = 0x243f6a8885a308d3ULL;
    for (int i = 0; i < p.dim(); ++i) {
        std::uint64_t bits;
        const double v = p.coords()[i];
        std::memcpy(&bits, &v, sizeof bits);
        h ^= bits + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

double angle_of(double dot) { return std::acos(clamp_unit(dot)); }

// Boundary ring of a 3-dimensional spherical polytope: the vertices in
// cyclic order, stored arc by arc. Linear functionals restricted to one arc
// are sinusoids, so their extrema have closed forms; scanning the ring gives
// the exact boundary minimum of x -> p.x, which a vertex scan misses by the
// arc sagitta whenever the witness lies mid-edge.
struct Ring3 {
    std::vector<double> ax, ay, az; // arc start
    std::vector<double> ux, uy, uz; // unit tangent toward the next vertex
    std::vector<double> ct, st;     // cos/sin of the arc length

    static Ring3 build(const std::vector<SpherePoint>& verts) {
        Ring3 r;
        const std::size_t n = verts.size();
        Vec sum = Vec::Zero(3);
        for (const auto& v : verts) sum += v.coords();
        const SpherePoint c = normalize(sum);
        const auto basis = tangent_basis(c);

        std::vector<std::size_t> order(n);
        std::vector<double> angle(n);
        for (std::size_t i = 0; i < n; ++i) {
            order[i] = i;
            angle[i] = std::atan2(basis[1].dot(verts[i].coords()),
                                  basis[0].dot(verts[i].coords()));
        }
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return angle[a] < angle[b]; });

        for (std::size_t k = 0; k < n; ++k) {
            const Vec& a = verts[order[k]].coords();
            const Vec& b = verts[order[(k + 1) % n]].coords();
            const double dot = clamp_unit(a.dot(b));
            Vec u = b - a * dot;
            const double un = u.norm();
            if (un < 1e-15) continue;
            u /= un;
            r.ax.push_back(a[0]);
            r.ay.push_back(a[1]);
            r.az.push_back(a[2]);
            r.ux.push_back(u[0]);
            r.uy.push_back(u[1]);
            r.uz.push_back(u[2]);
            r.ct.push_back(dot);
            r.st.push_back(std::sqrt(std::max(0.0, 1.0 - dot * dot)));
        }
        return r;
    }

    std::size_t arcs() const { return ax.size(); }

    // Exact boundary minimum of x -> p.x; optionally reports the witness.
    double min_dot(const double* p, Vec* witness) const {
        double best = 2.0;
        std::size_t barc = 0;
        bool binter = false;
        for (std::size_t i = 0; i < arcs(); ++i) {
            const double da = p[0] * ax[i] + p[1] * ay[i] + p[2] * az[i];
            const double du = p[0] * ux[i] + p[1] * uy[i] + p[2] * uz[i];
            if (da < best) {
                best = da;
                barc = i;
                binter = false;
            }
            // The sinusoid minimum -hypot(da, du) sits inside the arc iff the
            // phase point (-da, -du) lies in the sector swept from (1, 0) to
            // (ct, st); arcs are shorter than pi, so two cross products decide.
            if (-du >= 0.0 && -da * st[i] + du * ct[i] >= 0.0) {
                const double m = -std::hypot(da, du);
                if (m < best) {
                    best = m;
                    barc = i;
                    binter = true;
                }
            }
        }
        if (witness) {
            const std::size_t i = barc;
            Vec w(3);
            if (binter) {
                const double da = p[0] * ax[i] + p[1] * ay[i] + p[2] * az[i];
                const double du = p[0] * ux[i] + p[1] * uy[i] + p[2] * uz[i];
                const double rr = std::hypot(da, du);
                w << -(da * ax[i] + du * ux[i]) / rr,
                    -(da * ay[i] + du * uy[i]) / rr,
                    -(da * az[i] + du * uz[i]) / rr;
            } else {
                w << ax[i], ay[i], az[i];
            }
            *witness = w;
        }
        return best;
    }
};

struct BestPair {
    std::size_t i = 0, j = 0;
    double dot = 2.0;
};

// Smallest pairwise dots (largest distances), kept sorted ascending.
void push_pair(std::vector<BestPair>& heap, std::size_t cap, std::size_t i,
               std::size_t j, double dot) {
    if (heap.size() == cap && dot >= heap.back().dot) return;
    BestPair bp{i, j, dot};
    auto it = std::upper_bound(heap.begin(), heap.end(), bp,
                               [](const BestPair& a, const BestPair& b) {
                                   return a.dot < b.dot;
                               });
    heap.insert(it, bp);
    if (heap.size() > cap) heap.pop_back();
}

// Snap x to the cap constraints by cyclic projection onto the violated cap
// boundaries (rotate toward the center until the distance equals the radius).
void project_caps(const std::vector<Cap>& caps, Vec& x) {
    for (int round = 0; round < 64; ++round) {
        bool moved = false;
        for (const auto& c : caps) {
            const Vec& cc = c.center.coords();
            const double cr = std::cos(c.radius);
            if (x.dot(cc) >= cr - 1e-14) continue;
            Vec t = x - cc * x.dot(cc);
            const double tn = t.norm();
            if (tn < 1e-15) continue;
            x = cr * cc + std::sin(c.radius) * (t / tn);
            moved = true;
        }
        if (!moved) break;
    }
    x.normalize();
}

// Minimize x.q over the cap intersection by projected gradient descent with
// backtracking, from the given start.
Vec linear_min_caps(const std::vector<Cap>& caps, const Vec& q, Vec x) {
    project_caps(caps, x);
    double fx = x.dot(q);
    double step = 0.5;
    for (int it = 0; it < 240 && step > 1e-11; ++it) {
        Vec g = q - x * fx;
        if (g.norm() < 1e-15) break;
        Vec cand = x - step * g;
        cand.normalize();
        project_caps(caps, cand);
        const double fc = cand.dot(q);
        if (fc < fx - 1e-16) {
            x = cand;
            fx = fc;
        } else {
            step *= 0.5;
        }
    }
    return x;
}

// Cyclic projection onto the halfspace system {x : x.row_i >= 0}; returns
// false if no feasible point is reached.
bool project_halfspaces(const detail::FlatPoints& rows, Vec& x) {
    const int d = rows.dim;
    for (int round = 0; round < 256; ++round) {
        bool moved = false;
        for (std::size_t i = 0; i < rows.count; ++i) {
            const double s = rows.dot(i, x.data());
            if (s >= -1e-14) continue;
            const double* r = rows.row(i);
            for (int k = 0; k < d; ++k) x[k] -= s * r[k];
            x.normalize();
            moved = true;
        }
        if (!moved) return true;
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < rows.count; ++i)
        worst = std::min(worst, rows.dot(i, x.data()));
    return worst >= -1e-9;
}

// Monotone projected-descent polish of p.x from a feasible start; used where
// the start is already near the minimum, so few iterations and no restarts.
double halfspace_descend(const detail::FlatPoints& rows, const Vec& p, Vec& x) {
    double fx = x.dot(p);
    double step = 0.25;
    for (int it = 0; it < 160 && step > 1e-10; ++it) {
        Vec g = p - x * fx;
        if (g.norm() < 1e-15) break;
        Vec cand = x - step * g;
        cand.normalize();
        if (!project_halfspaces(rows, cand)) {
            step *= 0.5;
            continue;
        }
        const double fc = cand.dot(p);
        if (fc < fx - 1e-16) {
            x = cand;
            fx = fc;
        } else {
            step *= 0.5;
        }
    }
    return fx;
}

// Minimize p.x over {x on the sphere : x.row_i >= 0}, starting from the
// unconstrained minimizer -p snapped to feasibility and from eight random
// restarts; returns the best dot reached and optionally its argmin.
double linear_min_halfspaces(const detail::FlatPoints& rows, const SpherePoint& p,
                             std::uint64_t seed, Vec* argmin = nullptr) {
    const int d = rows.dim;
    std::mt19937_64 rng(seed);
    double best = 2.0;
    Vec bx;
    for (int restart = -1; restart < 8; ++restart) {
        Vec x = restart < 0 ? Vec(-p.coords())
                            : random_sphere_point(d, rng).coords();
        if (restart >= 0 && x.dot(p.coords()) > 0.0) x = -x;
        if (!project_halfspaces(rows, x)) continue;
        double fx = x.dot(p.coords());
        double step = 0.5;
        for (int it = 0; it < 240 && step > 1e-11; ++it) {
            Vec g = p.coords() - x * fx;
            if (g.norm() < 1e-15) break;
            Vec cand = x - step * g;
            cand.normalize();
            if (!project_halfspaces(rows, cand)) break;
            const double fc = cand.dot(p.coords());
            if (fc < fx - 1e-16) {
                x = cand;
                fx = fc;
            } else {
                step *= 0.5;
            }
        }
        if (fx < best) {
            best = fx;
            bx = x;
        }
    }
    if (best > 1.5)
        throw GeometryError("constrained descent found no feasible start");
    if (argmin) *argmin = bx;
    return best;
}

void order_pair(std::pair<SpherePoint, SpherePoint>& w) {
    if (lex_less(w.second, w.first)) std::swap(w.first, w.second);
}

// Constraint witnesses of the body for support tests and descent route (b):
// vertices for polytopes, boundary samples for cap bodies.
std::vector<SpherePoint> support_witnesses(const Body& body,
                                           const ToleranceConfig& cfg) {
    if (body.is_polytope()) return body.polytope().vertices;
    const int m = std::min(cfg.boundary_samples, 512);
    return boundary_sample(body, m, mix_seed(cfg.seed, 0x3b1dULL), cfg);
}

double reject_degenerate_diameter(double diam, const ToleranceConfig& cfg) {
    if (diam > M_PI - cfg.tol_sample)
        throw GeometryError("degenerate body: diameter within tol_sample of pi");
    return diam;
}

// Descent route for the width: minimize p.x over the dual of the witness
// set. Polytope witness systems are exact; sampled cap-body systems leave
// slivers past the polar corners, so the result is checked against the true
// cap constraints and violated ones are added as cuts until it holds.
double direct_min_dot(const Body& body, std::vector<SpherePoint> witnesses,
                      const SpherePoint& p, const ToleranceConfig& cfg) {
    const std::uint64_t seed = mix_seed(cfg.seed, hash_point(p));
    if (body.is_polytope()) {
        const auto rows = detail::FlatPoints::from_points(witnesses);
        double best = linear_min_halfspaces(rows, p, seed);
        if (body.dim() == 3 && rows.count <= 64) {
            // The minimum's active set holds at most two rows here, so
            // descending from every feasible two-row corner leaves no basin
            // to the luck of the random restarts.
            for (std::size_t i = 0; i + 1 < rows.count; ++i) {
                const double* a = rows.row(i);
                for (std::size_t j = i + 1; j < rows.count; ++j) {
                    const double* b = rows.row(j);
                    Vec c(3);
                    c << a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                        a[0] * b[1] - a[1] * b[0];
                    const double cn = c.norm();
                    if (cn < 1e-12) continue;
                    c /= cn;
                    for (int sign = 0; sign < 2; ++sign, c = -c) {
                        double lo = 1e300;
                        for (std::size_t k = 0; k < rows.count; ++k)
                            lo = std::min(lo, rows.dot(k, c.data()));
                        if (lo < -1e-9) continue;
                        Vec x = c;
                        best = std::min(best,
                                        halfspace_descend(rows, p.coords(), x));
                    }
                }
            }
        }
        return best;
    }
    const auto& caps = body.cap_body().caps;
    double val = 2.0;
    for (int cut = 0; cut < 24; ++cut) {
        const auto rows = detail::FlatPoints::from_points(witnesses);
        Vec x(body.dim());
        val = linear_min_halfspaces(rows, p, seed, &x);
        std::size_t bs = 0;
        double bd = 1e300;
        for (std::size_t i = 0; i < witnesses.size(); ++i) {
            const double d = witnesses[i].coords().dot(x);
            if (d < bd) {
                bd = d;
                bs = i;
            }
        }
        const Vec y = linear_min_caps(caps, x, witnesses[bs].coords());
        if (y.dot(x) >= -1e-9) break;
        witnesses.push_back(normalize(y));
    }
    return val;
}

// Exact boundary extremizer over a 3-dimensional polytope; in higher
// dimensions a vertex scan, with a descent polish on sparse polytopes whose
// facets are wide enough to hide the minimum mid-facet. Dense sampled bodies
// skip the polish: their facet sagitta is below the sampling tolerance.
class PolytopeFarthest {
public:
    explicit PolytopeFarthest(const SphericalPolytope& k)
        : dim_(k.dim()), points_(detail::FlatPoints::from_points(k.vertices)) {
        if (dim_ == 3)
            ring_ = Ring3::build(k.vertices);
        else if (points_.count < 512)
            rows_ = detail::FlatPoints::from_points(k.hcenters);
    }

    double min_dot(const double* p, Vec* witness) const {
        if (dim_ == 3) return ring_.min_dot(p, witness);
        double best = 2.0;
        std::size_t bi = 0;
        for (std::size_t i = 0; i < points_.count; ++i) {
            const double d = points_.dot(i, p);
            if (d < best) {
                best = d;
                bi = i;
            }
        }
        Vec w(dim_);
        std::memcpy(w.data(), points_.row(bi), sizeof(double) * dim_);
        if (rows_.count > 0) {
            Vec pv(dim_);
            std::memcpy(pv.data(), p, sizeof(double) * dim_);
            best = std::min(best, halfspace_descend(rows_, pv, w));
        }
        if (witness) *witness = w;
        return best;
    }

private:
    int dim_;
    detail::FlatPoints points_;
    Ring3 ring_;
    detail::FlatPoints rows_;
};

WidthReport polytope_diameter(const SphericalPolytope& k,
                              const ToleranceConfig& cfg) {
    const auto& verts = k.vertices;
    if (verts.size() < 2)
        throw GeometryError("degenerate body: fewer than two vertices");
    const auto pts = detail::FlatPoints::from_points(verts);
    std::size_t bi = 0, bj = 1;
    double best = 2.0;
    for (std::size_t i = 0; i + 1 < pts.count; ++i)
        for (std::size_t j = i + 1; j < pts.count; ++j) {
            const double d = pts.dot(i, pts.row(j));
            if (d < best) {
                best = d;
                bi = i;
                bj = j;
            }
        }
    Vec p = verts[bi].coords(), q = verts[bj].coords();

    if (k.dim() == 3) {
        // Vertex pairs bound the diameter from below, but the witness pair
        // can sit mid-edge on one or both arcs. Against a fixed vertex the
        // arc dot is a sinusoid; arc against arc it is a 2x2 bilinear form
        // in the arc phases whose interior minimum is minus the top singular
        // value. Enumerating both closes the boundary exactly; the dot is
        // 1-Lipschitz along unit-speed arcs, which prunes cells that cannot
        // beat the running best.
        const Ring3 ring = Ring3::build(verts);
        const std::size_t n = ring.arcs();
        std::vector<double> tlen(n);
        for (std::size_t i = 0; i < n; ++i)
            tlen[i] = std::atan2(ring.st[i], ring.ct[i]);
        for (std::size_t i = 0; i < n; ++i) {
            const double ai[3] = {ring.ax[i], ring.ay[i], ring.az[i]};
            const double ui[3] = {ring.ux[i], ring.uy[i], ring.uz[i]};
            for (std::size_t j = 0; j < n; ++j) {
                const double aa = ai[0] * ring.ax[j] + ai[1] * ring.ay[j] +
                                  ai[2] * ring.az[j];
                if (aa - tlen[i] - tlen[j] > best) continue;
                const double au = ai[0] * ring.ux[j] + ai[1] * ring.uy[j] +
                                  ai[2] * ring.uz[j];
                if (i != j && -au >= 0.0 &&
                    -aa * ring.st[j] + au * ring.ct[j] >= 0.0) {
                    const double m = -std::hypot(aa, au);
                    if (m < best) {
                        best = m;
                        p = Vec(3);
                        p << ai[0], ai[1], ai[2];
                        q = Vec(3);
                        q << -(aa * ring.ax[j] + au * ring.ux[j]) / -m,
                            -(aa * ring.ay[j] + au * ring.uy[j]) / -m,
                            -(aa * ring.az[j] + au * ring.uz[j]) / -m;
                    }
                }
                if (j <= i) continue;
                const double ua = ui[0] * ring.ax[j] + ui[1] * ring.ay[j] +
                                  ui[2] * ring.az[j];
                const double uu = ui[0] * ring.ux[j] + ui[1] * ring.uy[j] +
                                  ui[2] * ring.uz[j];
                const double psi =
                    0.5 * std::atan2(2.0 * (aa * au + ua * uu),
                                     aa * aa + ua * ua - au * au - uu * uu);
                const double vc = std::cos(psi), vs = std::sin(psi);
                const double mc = aa * vc + au * vs, ms = ua * vc + uu * vs;
                const double sig = std::hypot(mc, ms);
                if (sig < 1e-15 || -sig >= best) continue;
                const double t0 = std::atan2(-ms, -mc);
                for (int flip = 0; flip < 2; ++flip) {
                    const double half = flip ? M_PI : 0.0;
                    const double t1 =
                        std::fmod(t0 + half + 2.0 * M_PI, 2.0 * M_PI);
                    const double s1 =
                        std::fmod(psi + half + 2.0 * M_PI, 2.0 * M_PI);
                    if (t1 > tlen[i] || s1 > tlen[j]) continue;
                    best = -sig;
                    p = Vec(3);
                    p << std::cos(t1) * ai[0] + std::sin(t1) * ui[0],
                        std::cos(t1) * ai[1] + std::sin(t1) * ui[1],
                        std::cos(t1) * ai[2] + std::sin(t1) * ui[2];
                    q = Vec(3);
                    q << std::cos(s1) * ring.ax[j] + std::sin(s1) * ring.ux[j],
                        std::cos(s1) * ring.ay[j] + std::sin(s1) * ring.uy[j],
                        std::cos(s1) * ring.az[j] + std::sin(s1) * ring.uz[j];
                    break;
                }
            }
        }
    } else if (pts.count < 512) {
        // Sparse high-dimensional polytopes have facets wide enough for the
        // diametral pair to sit mid-facet, invisible to a vertex scan.
        // Alternate the descent-backed farthest map from every vertex.
        const auto rows = detail::FlatPoints::from_points(k.hcenters);
        const int d = k.dim();
        const auto farthest = [&](const Vec& query, Vec& out) {
            double fb = 2.0;
            std::size_t fi = 0;
            for (std::size_t i = 0; i < pts.count; ++i) {
                const double v = pts.dot(i, query.data());
                if (v < fb) {
                    fb = v;
                    fi = i;
                }
            }
            Vec w(d);
            std::memcpy(w.data(), pts.row(fi), sizeof(double) * d);
            const double fd = halfspace_descend(rows, query, w);
            out = w;
            return std::min(fb, fd);
        };
        for (std::size_t s = 0; s < pts.count; ++s) {
            Vec a(d);
            std::memcpy(a.data(), pts.row(s), sizeof(double) * d);
            Vec b(d);
            double cur = farthest(a, b);
            for (int round = 0; round < 12; ++round) {
                Vec na(d);
                const double d1 = farthest(b, na);
                if (d1 >= cur - 1e-15) break;
                cur = d1;
                a = na;
                Vec nb(d);
                const double d2 = farthest(a, nb);
                if (d2 >= cur - 1e-15) break;
                cur = d2;
                b = nb;
            }
            if (cur < best) {
                best = cur;
                p = a;
                q = b;
            }
        }
    }

    const double diam = reject_degenerate_diameter(angle_of(best), cfg);
    WidthReport report{Angle::from_radians(diam),
                       {normalize(p), normalize(q)},
                       ExtremizationMethod::exact_vertices};
    order_pair(report.witness_pair);
    return report;
}

} // namespace

WidthReport diameter(const Body& body, const ToleranceConfig& cfg) {
    cfg.validate();
    if (body.is_polytope()) return polytope_diameter(body.polytope(), cfg);

    const auto& caps = body.cap_body().caps;
    const auto samples = boundary_sample(body, cfg.boundary_samples,
                                         mix_seed(cfg.seed, 0xd1a0ULL), cfg);
    const auto pts = detail::FlatPoints::from_points(samples);
    std::vector<BestPair> starts;
    starts.reserve(9);
    for (std::size_t i = 0; i + 1 < pts.count; ++i)
        for (std::size_t j = i + 1; j < pts.count; ++j)
            push_pair(starts, 8, i, j, pts.dot(i, pts.row(j)));
    if (starts.empty()) throw GeometryError("degenerate body: no boundary samples");

    double best = 2.0;
    Vec bp, bq;
    for (const auto& s : starts) {
        Vec p = samples[s.i].coords();
        Vec q = samples[s.j].coords();
        double f = p.dot(q);
        for (int round = 0; round < 8; ++round) {
            q = linear_min_caps(caps, p, q);
            p = linear_min_caps(caps, q, p);
            const double fn = p.dot(q);
            if (f - fn < 1e-13) {
                f = fn;
                break;
            }
            f = fn;
        }
        if (f < best) {
            best = f;
            bp = p;
            bq = q;
        }
    }
    const double diam = reject_degenerate_diameter(angle_of(best), cfg);
    WidthReport report{Angle::from_radians(diam),
                       {normalize(bp), normalize(bq)},
                       ExtremizationMethod::sampled};
    order_pair(report.witness_pair);
    return report;
}

WidthReport farthest_point(const Body& body, const SpherePoint& p,
                           const ToleranceConfig& cfg) {
    cfg.validate();
    if (p.dim() != body.dim()) throw std::invalid_argument("dimension mismatch");
    if (body.is_polytope()) {
        const PolytopeFarthest far(body.polytope());
        Vec w(body.dim());
        const double best = far.min_dot(p.coords().data(), &w);
        return WidthReport{Angle::from_radians(angle_of(best)),
                           {p, normalize(w)},
                           ExtremizationMethod::exact_vertices};
    }

    const auto& caps = body.cap_body().caps;
    const auto samples = boundary_sample(body, cfg.boundary_samples,
                                         mix_seed(cfg.seed, 0xfa27ULL), cfg);
    const auto pts = detail::FlatPoints::from_points(samples);
    std::vector<BestPair> starts;
    starts.reserve(9);
    for (std::size_t i = 0; i < pts.count; ++i)
        push_pair(starts, 8, i, i, pts.dot(i, p.coords().data()));
    double best = 2.0;
    Vec bx;
    for (const auto& s : starts) {
        const Vec x = linear_min_caps(caps, p.coords(), samples[s.i].coords());
        const double f = x.dot(p.coords());
        if (f < best) {
            best = f;
            bx = x;
        }
    }
    return WidthReport{Angle::from_radians(angle_of(best)),
                       {p, normalize(bx)},
                       ExtremizationMethod::sampled};
}

namespace {

void require_support(const std::vector<SpherePoint>& witnesses,
                     const SpherePoint& p, const ToleranceConfig& cfg) {
    double m = 1e300;
    for (const auto& w : witnesses) m = std::min(m, w.dot(p));
    if (std::abs(m) > cfg.tol_sample)
        throw GeometryError("center does not support the body");
}

ExtremizationMethod method_for(const Body& body) {
    return body.is_polytope() ? ExtremizationMethod::exact_vertices
                              : ExtremizationMethod::sampled;
}

} // namespace

WidthReport width_wrt(const Body& body, const SpherePoint& p,
                      const ToleranceConfig& cfg) {
    cfg.validate();
    if (p.dim() != body.dim()) throw std::invalid_argument("dimension mismatch");
    const auto witnesses = support_witnesses(body, cfg);
    require_support(witnesses, p, cfg);

    const Body polar = polar_body(body, cfg);
    const PolytopeFarthest far(polar.polytope());
    Vec w(body.dim());
    const double lo = far.min_dot(p.coords().data(), &w);
    WidthReport report{Angle::from_radians(M_PI - angle_of(lo)),
                       {p, normalize(w)},
                       method_for(body)};

    const double direct = M_PI - angle_of(direct_min_dot(body, witnesses, p, cfg));
    if (std::abs(report.value.radians() - direct) > cfg.tol_sample)
        throw GeometryError("width cross-check failed: descent route disagrees");
    return report;
}

WidthRoutes width_wrt_routes(const Body& body, const SpherePoint& p,
                             const ToleranceConfig& cfg) {
    cfg.validate();
    if (p.dim() != body.dim()) throw std::invalid_argument("dimension mismatch");
    const auto witnesses = support_witnesses(body, cfg);
    require_support(witnesses, p, cfg);

    const Body polar = polar_body(body, cfg);
    const PolytopeFarthest far(polar.polytope());
    const double lo = far.min_dot(p.coords().data(), nullptr);
    const double direct = M_PI - angle_of(direct_min_dot(body, witnesses, p, cfg));
    return WidthRoutes{M_PI - angle_of(lo), direct};
}

namespace {

double sampled_min_width(const Body& polar, const ToleranceConfig& cfg) {
    const int m = std::min(cfg.boundary_samples, 512);
    const auto centers =
        boundary_sample(polar, m, mix_seed(cfg.seed, 0x71c4ULL), cfg);
    const PolytopeFarthest far(polar.polytope());
    std::vector<double> widths(centers.size());
    std::size_t b1 = 0;
    for (std::size_t i = 0; i < centers.size(); ++i) {
        const double lo = far.min_dot(centers[i].coords().data(), nullptr);
        widths[i] = M_PI - angle_of(lo);
        if (widths[i] < widths[b1]) b1 = i;
    }
    double min_width = widths[b1];

    // The scan sees the minimizing center only up to the covering radius of
    // the samples; a shrink-step tangent search walks the best centers onto
    // it. Two starts guard against the runner-up basin being the deeper one.
    const double delta = 2.0 / std::sqrt(static_cast<double>(m));
    std::size_t b2 = centers.size();
    for (std::size_t i = 0; i < centers.size(); ++i) {
        if (angle_of(centers[i].dot(centers[b1])) <= 2.0 * delta) continue;
        if (b2 == centers.size() || widths[i] < widths[b2]) b2 = i;
    }

    const SpherePoint c0 = interior_point(polar, cfg);
    const Vec c0v = c0.coords();
    const auto width_at = [&](const Vec& u) {
        const SpherePoint c = boundary_point(polar, c0, u, cfg);
        return M_PI - angle_of(far.min_dot(c.coords().data(), nullptr));
    };
    std::mt19937_64 rng(mix_seed(cfg.seed, 0x52f1ULL));
    for (const std::size_t start : {b1, b2}) {
        if (start == centers.size()) continue;
        Vec bu = centers[start].coords() - c0v * c0v.dot(centers[start].coords());
        if (bu.norm() < 1e-14) continue;
        bu.normalize();
        double local = widths[start];
        double step = delta;
        int evals = 0;
        while (step > 1e-8 && evals < 360) {
            bool improved = false;
            for (int t = 0; t < 6 && !improved; ++t, ++evals) {
                Vec u = bu + step * random_tangent(c0, rng);
                u -= c0v * c0v.dot(u);
                const double un = u.norm();
                if (un < 1e-14) continue;
                u /= un;
                const double w = width_at(u);
                if (w < local - 1e-15) {
                    local = w;
                    bu = u;
                    improved = true;
                }
            }
            if (!improved) step *= 0.5;
        }
        min_width = std::min(min_width, local);
    }
    return min_width;
}

} // namespace

WidthReport thickness(const Body& body, const ToleranceConfig& cfg) {
    cfg.validate();
    const Body polar = polar_body(body, cfg);
    WidthReport pd = diameter(polar, cfg);
    WidthReport report{Angle::from_radians(M_PI - pd.value.radians()),
                       pd.witness_pair, method_for(body)};

    // Cross-check against the sampled minimum of per-center widths. In
    // ambient dimension 4 and up, dense sampled bodies carry facet sagitta
    // on both routes, so the budget is an order of magnitude looser.
    const double sampled = sampled_min_width(polar, cfg);
    const double budget = cfg.tol_sample * (body.dim() <= 3 ? 1.0 : 10.0);
    if (std::abs(report.value.radians() - sampled) > budget)
        throw GeometryError("thickness cross-check failed: sampled widths disagree");
    return report;
}

ThicknessRoutes thickness_routes(const Body& body, const ToleranceConfig& cfg) {
    cfg.validate();
    const Body polar = polar_body(body, cfg);
    const double via_diam = M_PI - diameter(polar, cfg).value.radians();
    return ThicknessRoutes{via_diam, sampled_min_width(polar, cfg)};
}

ConstancyReport is_constant_diameter(const Body& body, double tol,
                                     const ToleranceConfig& cfg) {
    cfg.validate();
    const double tau = diameter(body, cfg).value.radians();
    const auto probes = boundary_sample(body, cfg.boundary_samples,
                                        mix_seed(cfg.seed, 0xcd1aULL), cfg);
    const auto ppts = detail::FlatPoints::from_points(probes);

    ConstancyReport report;
    report.tau = tau;
    report.samples_used = static_cast<int>(probes.size());

    double worst = 0.0;
    if (body.is_polytope()) {
        const PolytopeFarthest far(body.polytope());
        for (std::size_t i = 0; i < ppts.count; ++i) {
            const double lo = far.min_dot(ppts.row(i), nullptr);
            worst = std::max(worst, tau - angle_of(lo));
        }
    } else {
        const auto& caps = body.cap_body().caps;
        for (std::size_t i = 0; i < ppts.count; ++i) {
            double lo = 2.0;
            std::size_t bj = 0;
            for (std::size_t j = 0; j < ppts.count; ++j) {
                const double d = ppts.dot(j, ppts.row(i));
                if (d < lo) {
                    lo = d;
                    bj = j;
                }
            }
            Vec p(body.dim());
            std::memcpy(p.data(), ppts.row(i), sizeof(double) * body.dim());
            const Vec far = linear_min_caps(caps, p, probes[bj].coords());
            worst = std::max(worst, tau - angle_of(far.dot(p)));
        }
    }
    report.max_deviation = std::max(worst, 0.0);
    report.is_constant = report.max_deviation <= tol;
    return report;
}

ConstancyReport is_constant_width(const Body& body, double tol,
                                  const ToleranceConfig& cfg) {
    cfg.validate();
    const Body polar = polar_body(body, cfg);
    const auto centers = boundary_sample(polar, cfg.boundary_samples,
                                         mix_seed(cfg.seed, 0xc31dULL), cfg);
    const PolytopeFarthest far(polar.polytope());

    ConstancyReport report;
    report.samples_used = static_cast<int>(centers.size());

    double wmin = 1e300, wmax = -1e300, wsum = 0.0;
    for (const auto& c : centers) {
        const double lo = far.min_dot(c.coords().data(), nullptr);
        const double w = M_PI - angle_of(lo);
        wmin = std::min(wmin, w);
        wmax = std::max(wmax, w);
        wsum += w;
    }
    report.tau = centers.empty() ? 0.0 : wsum / static_cast<double>(centers.size());
    report.max_deviation = centers.empty() ? 0.0 : wmax - wmin;
    report.is_constant = report.max_deviation <= tol;
    return report;
}

ConstancyEquivalenceReport check_constancy_equivalence(const Body& body,
                                                       double tol,
                                                       const ToleranceConfig& cfg) {
    cfg.validate();
    ConstancyEquivalenceReport report;
    report.constant_diameter = is_constant_diameter(body, tol, cfg);
    report.constant_width = is_constant_width(body, tol, cfg);
    report.verdicts_agree =
        report.constant_diameter.is_constant == report.constant_width.is_constant;
    const bool both = report.constant_diameter.is_constant &&
                      report.constant_width.is_constant;
    report.tau_agree =
        !both ||
        std::abs(report.constant_width.tau - report.constant_diameter.tau) <= tol;
    report.pass = report.verdicts_agree && report.tau_agree;

    if (report.constant_width.is_constant) {
        const Body polar = polar_body(body, cfg);
        const double dual_tau = M_PI - report.constant_width.tau;
        report.polar_constant_width = is_constant_width(polar, tol, cfg);
        report.polar_constant_diameter = is_constant_diameter(polar, tol, cfg);
        report.polar_checks_pass =
            report.polar_constant_width->is_constant &&
            report.polar_constant_diameter->is_constant &&
            std::abs(report.polar_constant_width->tau - dual_tau) <= tol &&
            std::abs(report.polar_constant_diameter->tau - dual_tau) <= tol;
        report.pass = report.pass && report.polar_checks_pass;
    }
    return report;
}

} // namespace lunekit
