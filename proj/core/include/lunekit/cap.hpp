#pragma once

#include "lunekit/sphere.hpp"

namespace lunekit {

// Closed spherical cap {x : distance(center, x) <= radius}. Radius lies in
// (0, pi/2]; radius pi/2 is the closed hemisphere around the center. A cap of
// radius exactly 0 only arises as cap_polar of a hemisphere and is tagged
// degenerate; make_cap rejects it.
struct Cap {
    SpherePoint center;
    double radius;

    bool degenerate() const { return radius <= 0.0; }
};

Cap make_cap(const SpherePoint& center, double radius);

// Closed hemisphere with pole p, radius pi/2.
Cap hemisphere(const SpherePoint& p);

bool cap_contains(const Cap& cap, const SpherePoint& q, double tol_angle = 1e-9);

// Polar cap: cap(c, r) -> cap(c, pi/2 - r). An involution on (0, pi/2);
// hemispheres map to the degenerate radius-0 cap at the pole.
Cap cap_polar(const Cap& cap);

// Lune: intersection of two closed hemispheres with distinct, non-antipodal
// poles. The degenerate configurations (poles equal: a hemisphere, poles
// antipodal: a great subsphere) are rejected.
struct Lune {
    SpherePoint pole_a;
    SpherePoint pole_b;
};

Lune make_lune(const SpherePoint& a, const SpherePoint& b, double tol_angle = 1e-9);

// Angular thickness of the lune: pi - distance(pole_a, pole_b).
Angle lune_thickness(const Lune& lune);

} // namespace lunekit
