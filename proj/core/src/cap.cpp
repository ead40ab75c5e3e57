#include "lunekit/cap.hpp"

#include <cmath>

namespace lunekit {

Cap make_cap(const SpherePoint& center, double radius) {
    if (!(radius > 0.0) || radius > M_PI / 2.0 + 1e-12)
        throw GeometryError("cap radius outside (0, pi/2]");
    return Cap{center, std::min(radius, M_PI / 2.0)};
}

Cap hemisphere(const SpherePoint& p) {
    return Cap{p, M_PI / 2.0};
}

bool cap_contains(const Cap& cap, const SpherePoint& q, double tol_angle) {
    return distance(cap.center, q).radians() <= cap.radius + tol_angle;
}

Cap cap_polar(const Cap& cap) {
    // Radius 0 marks the degenerate polar of a hemisphere; it never enters a
    // body, so it bypasses make_cap on purpose.
    return Cap{cap.center, M_PI / 2.0 - cap.radius};
}

Lune make_lune(const SpherePoint& a, const SpherePoint& b, double tol_angle) {
    const double d = distance(a, b).radians();
    if (d < tol_angle)
        throw GeometryError("lune poles coincide: intersection is a hemisphere");
    if (d > M_PI - tol_angle)
        throw GeometryError("lune poles are antipodal: intersection is a great subsphere");
    return Lune{a, b};
}

Angle lune_thickness(const Lune& lune) {
    return Angle::from_radians(M_PI - distance(lune.pole_a, lune.pole_b).radians());
}

} // namespace lunekit
