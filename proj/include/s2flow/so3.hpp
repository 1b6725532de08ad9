#pragma once

// Algorithmic exponentials on SO(3) and their trivialized tangent maps,
// written as actions on 3-vectors. No rotation matrix is ever formed.
//
// Conventions: skew(xi) v = xi x v, so exp(skew(xi)) rotates by |xi| radians
// about xi. cay is the Cayley transform (I - skew/2)^{-1} (I + skew/2).

#include "s2flow/vec3.hpp"

namespace s2flow {

// cay(xi) v = v + (xi x v + xi x (xi x v) / 2) / (1 + |xi/2|^2).
// Exactly norm preserving up to roundoff for every xi.
inline Vec3 cay_apply(Vec3 xi, Vec3 v) {
    const Vec3 c1 = cross(xi, v);
    const Vec3 c2 = cross(xi, c1);
    const double s = 1.0 / (1.0 + 0.25 * norm2(xi));
    return {v.x + s * (c1.x + 0.5 * c2.x),
            v.y + s * (c1.y + 0.5 * c2.y),
            v.z + s * (c1.z + 0.5 * c2.z)};
}

// Rodrigues rotation. Below |xi| = 1e-4 the sin/cos coefficients are
// evaluated by series so the small-angle path loses no precision.
inline Vec3 exp_apply(Vec3 xi, Vec3 v) {
    const double t2 = norm2(xi);
    const Vec3 c1 = cross(xi, v);
    const Vec3 c2 = cross(xi, c1);
    double a, b;
    if (t2 < 1e-8) {
        a = 1.0 - t2 * (1.0 / 6.0) + t2 * t2 * (1.0 / 120.0);
        b = 0.5 - t2 * (1.0 / 24.0) + t2 * t2 * (1.0 / 720.0);
    } else {
        const double t = std::sqrt(t2);
        a = std::sin(t) / t;
        b = (1.0 - std::cos(t)) / t2;
    }
    return {v.x + a * c1.x + b * c2.x,
            v.y + a * c1.y + b * c2.y,
            v.z + a * c1.z + b * c2.z};
}

// Right trivialized tangent of cay: dcay_f(v) = (v + f x v / 2) / (1 + |f/2|^2).
inline Vec3 dcay_apply(Vec3 f, Vec3 v) {
    const Vec3 c1 = cross(f, v);
    const double s = 1.0 / (1.0 + 0.25 * norm2(f));
    return {s * (v.x + 0.5 * c1.x),
            s * (v.y + 0.5 * c1.y),
            s * (v.z + 0.5 * c1.z)};
}

// Inverse tangent: dcay_f^{-1}(v) = v - f x v / 2 + f <f,v> / 4.
inline Vec3 dcay_inv_apply(Vec3 f, Vec3 v) {
    const Vec3 c1 = cross(f, v);
    const double d = 0.25 * dot(f, v);
    return {v.x - 0.5 * c1.x + d * f.x,
            v.y - 0.5 * c1.y + d * f.y,
            v.z - 0.5 * c1.z + d * f.z};
}

}  // namespace s2flow
