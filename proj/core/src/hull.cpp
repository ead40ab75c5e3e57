#include "lunekit/hull.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <unordered_map>

namespace lunekit {

namespace {

double spread_scale(const std::vector<Vec>& points) {
    double s = 0.0;
    for (const Vec& p : points) s = std::max(s, p.lpNorm<Eigen::Infinity>());
    return std::max(s, 1e-300);
}

// Least-squares facet normal: the null direction of the span of the member
// points, oriented to agree with `orient`.
Vec refine_normal(const std::vector<Vec>& points, const std::vector<int>& members,
                  const Vec& orient) {
    const int d = static_cast<int>(points.front().size());
    const int k = std::min<int>(static_cast<int>(members.size()), 64);
    Eigen::MatrixXd m(k, d);
    const std::size_t stride = std::max<std::size_t>(1, members.size() / k);
    for (int r = 0; r < k; ++r)
        m.row(r) = points[members[std::min(members.size() - 1, r * stride)]];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
    Vec n = svd.matrixV().col(d - 1);
    if (n.dot(orient) < 0.0) n = -n;
    const double nn = n.norm();
    if (!(nn > 1e-12)) throw GeometryError("degenerate facet normal");
    return n / nn;
}

} // namespace

MarginResult max_min_margin(const std::vector<Vec>& points) {
    if (points.empty()) throw GeometryError("margin of empty point set");
    const int d = static_cast<int>(points.front().size());

    // Gilbert's algorithm for the minimum-norm point of the convex hull.
    // By hard-margin duality, max_w min_i w.p_i equals that norm (when
    // positive) and the minimizer's direction is the maximizing w.
    Vec p = points.front();
    for (const Vec& v : points)
        if (v.squaredNorm() < p.squaredNorm()) p = v;

    for (int iter = 0; iter < 4000; ++iter) {
        const double pn2 = p.squaredNorm();
        if (pn2 < 1e-28) break;
        double best = points.front().dot(p);
        const Vec* s = &points.front();
        for (const Vec& v : points) {
            const double dv = v.dot(p);
            if (dv < best) {
                best = dv;
                s = &v;
            }
        }
        if (best >= pn2 - 1e-15 * std::max(1.0, pn2)) break; // optimality gap closed
        // Line search: min-norm point on the segment [p, s].
        const Vec diff = *s - p;
        const double dn2 = diff.squaredNorm();
        if (dn2 < 1e-30) break;
        const double t = std::clamp(-p.dot(diff) / dn2, 0.0, 1.0);
        p += t * diff;
    }

    MarginResult out;
    const double pn = p.norm();
    if (pn < 1e-14) {
        // Hull contains the origin (up to noise): no separating direction.
        out.direction = Vec::Zero(d);
        out.direction[0] = 1.0;
        out.margin = 0.0;
        for (const Vec& v : points)
            out.margin = std::min(out.margin, v.dot(out.direction));
        return out;
    }
    out.direction = p / pn;
    out.margin = points.front().dot(out.direction);
    for (const Vec& v : points)
        out.margin = std::min(out.margin, v.dot(out.direction));
    return out;
}

int span_rank(const std::vector<Vec>& vectors, double tol) {
    if (vectors.empty()) return 0;
    Eigen::MatrixXd m(vectors.size(), vectors.front().size());
    for (size_t i = 0; i < vectors.size(); ++i) m.row(i) = vectors[i];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv[i] > tol * sv[0]) ++rank;
    return rank;
}

EuclideanHull convex_hull_2d(const std::vector<Vec>& points) {
    const int n = static_cast<int>(points.size());
    if (n < 3) throw GeometryError("2d hull needs at least 3 points");
    const double scale = spread_scale(points);
    const double eps = 1e-12 * scale * scale;

    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (points[a][0] != points[b][0]) return points[a][0] < points[b][0];
        return points[a][1] < points[b][1];
    });

    auto cross = [&](int o, int a, int b) {
        return (points[a][0] - points[o][0]) * (points[b][1] - points[o][1]) -
               (points[a][1] - points[o][1]) * (points[b][0] - points[o][0]);
    };

    // Monotone chain with strict turns: collinear mid-points are dropped, so
    // the ring holds exactly the extreme points.
    std::vector<int> ring(2 * n);
    int k = 0;
    for (int ii = 0; ii < n; ++ii) {
        const int i = idx[ii];
        while (k >= 2 && cross(ring[k - 2], ring[k - 1], i) <= eps) --k;
        ring[k++] = i;
    }
    const int lower = k + 1;
    for (int ii = n - 2; ii >= 0; --ii) {
        const int i = idx[ii];
        while (k >= lower && cross(ring[k - 2], ring[k - 1], i) <= eps) --k;
        ring[k++] = i;
    }
    ring.resize(k - 1);
    if (static_cast<int>(ring.size()) < 3)
        throw GeometryError("2d hull degenerate: points are collinear");

    EuclideanHull hull;
    hull.extreme.assign(n, 0);
    for (int i : ring) hull.extreme[i] = 1;

    const int m = static_cast<int>(ring.size());
    for (int e = 0; e < m; ++e) {
        const Vec& a = points[ring[e]];
        const Vec& b = points[ring[(e + 1) % m]];
        Vec normal(2);
        normal[0] = b[1] - a[1];
        normal[1] = a[0] - b[0];
        const double nn = normal.norm();
        if (nn < 1e-14 * scale) continue;
        normal /= nn;
        const double offset = normal.dot(a);
        std::vector<int> members;
        for (int i = 0; i < n; ++i)
            if (std::abs(normal.dot(points[i]) - offset) <= 1e-9 * std::max(1.0, scale))
                members.push_back(i);
        hull.facet_normals.push_back(normal);
        hull.facet_offsets.push_back(offset);
        hull.facet_members.push_back(std::move(members));
    }
    return hull;
}

namespace {

struct Tri {
    int a, b, c;
    Vec n;       // outward unit normal
    double off;  // n.x = off on the plane
    bool alive = true;
};

std::uint64_t edge_key(int u, int v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
}

} // namespace

EuclideanHull convex_hull_3d(const std::vector<Vec>& points) {
    const int n = static_cast<int>(points.size());
    if (n < 4) throw GeometryError("3d hull needs at least 4 points");
    const double scale = spread_scale(points);
    const double eps_vis = 1e-10 * scale;

    // Initial tetrahedron: spread-maximizing greedy pick.
    int i0 = 0;
    for (int i = 1; i < n; ++i)
        if (points[i][0] < points[i0][0] ||
            (points[i][0] == points[i0][0] && i < i0))
            i0 = i;
    int i1 = -1;
    double best = -1.0;
    for (int i = 0; i < n; ++i) {
        const double d = (points[i] - points[i0]).norm();
        if (d > best) { best = d; i1 = i; }
    }
    if (best < 1e-12 * scale) throw GeometryError("3d hull degenerate: single point");
    int i2 = -1;
    best = -1.0;
    for (int i = 0; i < n; ++i) {
        Eigen::Vector3d u = points[i1].head<3>() - points[i0].head<3>();
        Eigen::Vector3d v = points[i].head<3>() - points[i0].head<3>();
        const double a = u.cross(v).norm();
        if (a > best) { best = a; i2 = i; }
    }
    if (best < 1e-12 * scale * scale)
        throw GeometryError("3d hull degenerate: points are collinear");
    int i3 = -1;
    best = -1.0;
    Eigen::Vector3d u01 = points[i1].head<3>() - points[i0].head<3>();
    Eigen::Vector3d u02 = points[i2].head<3>() - points[i0].head<3>();
    Eigen::Vector3d base_n = u01.cross(u02);
    for (int i = 0; i < n; ++i) {
        const double v = std::abs(base_n.dot(points[i].head<3>() - points[i0].head<3>()));
        if (v > best) { best = v; i3 = i; }
    }
    if (best < 1e-10 * scale * scale * scale)
        throw GeometryError("3d hull degenerate: points are coplanar");

    Eigen::Vector3d interior = (points[i0].head<3>() + points[i1].head<3>() +
                                points[i2].head<3>() + points[i3].head<3>()) / 4.0;

    std::vector<Tri> tris;
    std::unordered_map<std::uint64_t, std::array<int, 2>> edges;

    auto register_tri = [&](int a, int b, int c) {
        Tri t;
        t.a = a; t.b = b; t.c = c;
        Eigen::Vector3d nn = (points[b].head<3>() - points[a].head<3>())
                                 .cross(points[c].head<3>() - points[a].head<3>());
        const double nl = nn.norm();
        if (nl < 1e-14 * scale * scale)
            throw GeometryError("3d hull degenerate facet");
        nn /= nl;
        double off = nn.dot(points[a].head<3>());
        if (nn.dot(interior) > off) { // flip outward
            nn = -nn;
            off = -off;
            std::swap(t.b, t.c);
        }
        t.n = Vec(3);
        t.n << nn[0], nn[1], nn[2];
        t.off = off;
        const int id = static_cast<int>(tris.size());
        tris.push_back(std::move(t));
        for (auto [u, v] : {std::pair{a, b}, {b, c}, {c, a}}) {
            auto it = edges.find(edge_key(u, v));
            if (it == edges.end())
                edges[edge_key(u, v)] = {id, -1};
            else
                (it->second[0] < 0 ? it->second[0] : it->second[1]) = id;
        }
        return id;
    };
    auto unregister_tri = [&](int id) {
        Tri& t = tris[id];
        t.alive = false;
        for (auto [u, v] : {std::pair{t.a, t.b}, {t.b, t.c}, {t.c, t.a}}) {
            auto it = edges.find(edge_key(u, v));
            if (it == edges.end()) continue;
            if (it->second[0] == id) it->second[0] = it->second[1];
            it->second[1] = -1;
            if (it->second[0] < 0) edges.erase(it);
        }
    };

    register_tri(i0, i1, i2);
    register_tri(i0, i1, i3);
    register_tri(i0, i2, i3);
    register_tri(i1, i2, i3);

    std::vector<int> order;
    order.reserve(n);
    for (int i = 0; i < n; ++i)
        if (i != i0 && i != i1 && i != i2 && i != i3) order.push_back(i);
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    std::shuffle(order.begin(), order.end(), rng);

    std::vector<int> visible;
    for (int q : order) {
        const Eigen::Vector3d pq = points[q].head<3>();
        // Seed the visible set at the most violated facet, then grow it by
        // adjacency so the horizon stays a single closed loop.
        int seed = -1;
        double worst = eps_vis;
        for (int t = 0; t < static_cast<int>(tris.size()); ++t) {
            if (!tris[t].alive) continue;
            const double d = tris[t].n.head<3>().dot(pq) - tris[t].off;
            if (d > worst) { worst = d; seed = t; }
        }
        if (seed < 0) continue; // interior or on the surface: not extreme

        visible.clear();
        std::vector<char> mark(tris.size(), 0);
        visible.push_back(seed);
        mark[seed] = 1;
        for (size_t head = 0; head < visible.size(); ++head) {
            const Tri& t = tris[visible[head]];
            for (auto [u, v] : {std::pair{t.a, t.b}, {t.b, t.c}, {t.c, t.a}}) {
                const auto it = edges.find(edge_key(u, v));
                if (it == edges.end()) continue;
                for (int nb : it->second) {
                    if (nb < 0 || mark[nb] || !tris[nb].alive) continue;
                    const double d = tris[nb].n.head<3>().dot(pq) - tris[nb].off;
                    if (d > eps_vis) {
                        mark[nb] = 1;
                        visible.push_back(nb);
                    }
                }
            }
        }

        // Horizon: directed edges of visible triangles whose neighbor is not
        // visible.
        std::vector<std::pair<int, int>> horizon;
        for (int tv : visible) {
            const Tri& t = tris[tv];
            for (auto [u, v] : {std::pair{t.a, t.b}, {t.b, t.c}, {t.c, t.a}}) {
                const auto it = edges.find(edge_key(u, v));
                int other = -1;
                if (it != edges.end())
                    other = (it->second[0] == tv) ? it->second[1] : it->second[0];
                if (other < 0 || !mark[other]) horizon.emplace_back(u, v);
            }
        }
        if (horizon.size() < 3) throw GeometryError("3d hull horizon failure");

        for (int tv : visible) unregister_tri(tv);
        for (auto [u, v] : horizon) register_tri(u, v, q);
    }

    // Merge coplanar triangles into facet planes.
    EuclideanHull hull;
    hull.extreme.assign(n, 0);
    std::vector<int> plane_of(tris.size(), -1);
    for (int t = 0; t < static_cast<int>(tris.size()); ++t) {
        if (!tris[t].alive) continue;
        int found = -1;
        for (int f = 0; f < static_cast<int>(hull.facet_normals.size()); ++f) {
            if ((hull.facet_normals[f] - tris[t].n).norm() < 1e-7 &&
                std::abs(hull.facet_offsets[f] - tris[t].off) < 1e-7 * std::max(1.0, scale)) {
                found = f;
                break;
            }
        }
        if (found < 0) {
            hull.facet_normals.push_back(tris[t].n);
            hull.facet_offsets.push_back(tris[t].off);
            hull.facet_members.emplace_back();
            found = static_cast<int>(hull.facet_normals.size()) - 1;
        }
        plane_of[t] = found;
    }
    const double member_tol = 1e-8 * std::max(1.0, scale);
    for (size_t f = 0; f < hull.facet_normals.size(); ++f) {
        for (int i = 0; i < n; ++i)
            if (std::abs(hull.facet_normals[f].dot(points[i]) - hull.facet_offsets[f]) <= member_tol)
                hull.facet_members[f].push_back(i);
    }
    // A point is extreme iff it lies on three facet planes in general
    // position (a 0-dimensional face).
    std::vector<std::vector<int>> planes_of_point(n);
    for (size_t f = 0; f < hull.facet_members.size(); ++f)
        for (int i : hull.facet_members[f]) planes_of_point[i].push_back(static_cast<int>(f));
    for (int i = 0; i < n; ++i) {
        if (planes_of_point[i].size() < 3) continue;
        std::vector<Vec> ns;
        ns.reserve(planes_of_point[i].size());
        for (int f : planes_of_point[i]) ns.push_back(hull.facet_normals[f]);
        if (span_rank(ns, 1e-7) >= 3) hull.extreme[i] = 1;
    }
    return hull;
}

ConeHull cone_hull(const std::vector<Vec>& generators, double tol_angle) {
    if (generators.empty()) throw GeometryError("cone over empty generator set");
    const int d = static_cast<int>(generators.front().size());
    if (d != 3 && d != 4)
        throw GeometryError("exact cone enumeration supports ambient dimension 3 or 4 only");
    for (const Vec& g : generators)
        if (static_cast<int>(g.size()) != d)
            throw std::invalid_argument("dimension mismatch among generators");

    std::vector<Vec> gens;
    gens.reserve(generators.size());
    for (const Vec& g : generators) {
        const double nn = g.norm();
        if (!(nn > 1e-12)) throw GeometryError("degenerate direction among generators");
        gens.push_back(g / nn);
    }

    const MarginResult margin = max_min_margin(gens);
    if (margin.margin <= tol_angle)
        throw GeometryError("improper body: generators are not contained in an open hemisphere");
    if (span_rank(gens) < d)
        throw GeometryError("empty interior: generators do not span the ambient space");
    if (margin.margin < 1e-6)
        throw GeometryError("numerically degenerate body: hemisphere margin below 1e-6");

    const Vec w = margin.direction;
    std::vector<Vec> basis;
    {
        SpherePoint wp = normalize(w);
        basis = tangent_basis(wp);
    }

    std::vector<Vec> slice(gens.size(), Vec(d - 1));
    for (size_t i = 0; i < gens.size(); ++i) {
        const Vec q = gens[i] / gens[i].dot(w);
        for (int k = 0; k < d - 1; ++k) slice[i][k] = basis[k].dot(q);
    }

    const EuclideanHull flat = (d == 3) ? convex_hull_2d(slice) : convex_hull_3d(slice);

    ConeHull out;
    out.extreme.assign(gens.size(), 0);
    for (size_t i = 0; i < gens.size(); ++i) out.extreme[i] = flat.extreme[i];

    for (size_t f = 0; f < flat.facet_normals.size(); ++f) {
        if (flat.facet_members[f].size() < static_cast<size_t>(d - 1)) continue;
        Vec n = refine_normal(gens, flat.facet_members[f], w);
        // Recollect members against the refined plane and keep the normal
        // only if it genuinely supports the whole generator set.
        bool supports = true;
        for (const Vec& g : gens)
            if (n.dot(g) < -1e-8) { supports = false; break; }
        if (!supports) continue;
        std::vector<int> members;
        for (size_t i = 0; i < gens.size(); ++i)
            if (std::abs(n.dot(gens[i])) <= std::max(tol_angle, 1e-9)) members.push_back(static_cast<int>(i));
        if (members.size() < static_cast<size_t>(d - 1)) continue;
        out.facet_normals.push_back(std::move(n));
        out.facet_members.push_back(std::move(members));
    }
    if (out.facet_normals.size() < static_cast<size_t>(d))
        throw GeometryError("cone enumeration failed: too few facets");
    return out;
}

} // namespace lunekit
