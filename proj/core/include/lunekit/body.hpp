#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "lunekit/cap.hpp"
#include "lunekit/sphere.hpp"
#include "lunekit/tolerance.hpp"

namespace lunekit {

// Spherically convex polytope, carried in both representations at once:
// vertices (V-rep: the body is the spherical hull of these) and hcenters
// (H-rep: the body is the intersection of the hemispheres around these).
// Both lists are minimal, deduplicated and lexicographically sorted, which
// makes polar duality a representation swap and double polarity the
// identity on the nose.
struct SphericalPolytope {
    std::vector<SpherePoint> vertices;
    std::vector<SpherePoint> hcenters;

    int dim() const { return vertices.empty() ? 0 : vertices.front().dim(); }
};

// Intersection of finitely many caps with radii in (0, pi/2]. Cap bodies are
// the curved counterpart of polytopes; their boundary is traced by sampling
// rather than enumerated.
struct CapIntersectionBody {
    std::vector<Cap> caps;

    int dim() const { return caps.empty() ? 0 : caps.front().center.dim(); }
};

// A proper spherical convex body: nonempty interior, contained in an open
// hemisphere. Construction goes through s_conv / from_hemispheres /
// make_cap_body, which enforce properness.
class Body {
public:
    enum class Kind { polytope, caps };

    explicit Body(SphericalPolytope p) : rep_(std::move(p)) {}
    explicit Body(CapIntersectionBody c) : rep_(std::move(c)) {}

    Kind kind() const {
        return std::holds_alternative<SphericalPolytope>(rep_) ? Kind::polytope
                                                               : Kind::caps;
    }
    bool is_polytope() const { return kind() == Kind::polytope; }
    const SphericalPolytope& polytope() const {
        return std::get<SphericalPolytope>(rep_);
    }
    const CapIntersectionBody& cap_body() const {
        return std::get<CapIntersectionBody>(rep_);
    }
    int dim() const {
        return is_polytope() ? polytope().dim() : cap_body().dim();
    }

private:
    std::variant<SphericalPolytope, CapIntersectionBody> rep_;
};

// Spherical convex hull of a finite point set: the smallest spherically
// convex set containing it, i.e. the unit section of the convex cone over
// the points. Throws GeometryError when the hull is improper (not contained
// in an open hemisphere) or has empty interior (generators do not span).
SphericalPolytope s_conv(const std::vector<SpherePoint>& points,
                         const ToleranceConfig& cfg = {});

// Intersection of the closed hemispheres around the given centers, with the
// same properness requirements on the result.
SphericalPolytope from_hemispheres(const std::vector<SpherePoint>& centers,
                                   const ToleranceConfig& cfg = {});

// Cap intersection body. Requires nonempty interior (a point with strict
// slack in every cap) and properness.
Body make_cap_body(const std::vector<Cap>& caps, const ToleranceConfig& cfg = {});

bool contains(const Body& body, const SpherePoint& q,
              const ToleranceConfig& cfg = {});

// Smallest constraint slack of q: min over H-rep of h.q for polytopes, min
// over caps of (q.center - cos radius). Negative outside, zero on the
// boundary, positive inside.
double membership_slack(const Body& body, const SpherePoint& q);

// A point with strictly positive slack, found from the natural centroid
// candidate with a maximal-slack ascent fallback.
SpherePoint interior_point(const Body& body, const ToleranceConfig& cfg = {});

// Exit point of the geodesic t -> cos(t) c + sin(t) u from an interior point
// c with unit tangent u, located by bisection to tol_angle. Throws
// GeometryError if the ray never exits within (0, pi) (improper body).
SpherePoint boundary_point(const Body& body, const SpherePoint& c, const Vec& u,
                           const ToleranceConfig& cfg = {});

// m boundary points from uniformly random tangent directions at the interior
// point, in deterministic stream order for a given seed.
std::vector<SpherePoint> boundary_sample(const Body& body, int m,
                                         std::uint64_t seed,
                                         const ToleranceConfig& cfg = {});

// Centers Q of hemispheres supporting the body at boundary point P, i.e.
// Q.P = 0, body in the closed hemisphere around Q, touching at P. For
// polytopes these are the active H-centers; for cap bodies, the in-plane
// rotations normalize(c - cos(r) P) of the active cap centers.
std::vector<SpherePoint> supporting_centers(const Body& body,
                                            const SpherePoint& p,
                                            const ToleranceConfig& cfg = {});

} // namespace lunekit
