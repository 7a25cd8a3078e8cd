#pragma once

#include <cmath>
#include <complex>

#include "carpet/errors.hpp"

namespace carpet {

using Complex = std::complex<double>;

// Points with |z| above this live in the inverted chart w = 1/z.  The value
// is arbitrary but fixed: it keeps |stored value| <= 1e8 in both charts, so
// squaring in the chordal metric never overflows.
inline constexpr double kChartSwitch = 1e8;

// A point on the Riemann sphere, stored in whichever of the two affine
// charts (z or w = 1/z) is well-conditioned for it.
class SpherePoint {
public:
    SpherePoint() = default;

    static SpherePoint from_complex(Complex z) {
        SpherePoint p;
        if (std::abs(z) > kChartSwitch) {
            p.v_ = 1.0 / z;
            p.inverted_ = true;
        } else {
            p.v_ = z;
        }
        return p;
    }

    // Interpret `w` as the inverted-chart value 1/z.
    static SpherePoint from_inverted(Complex w) {
        SpherePoint p;
        if (std::abs(w) > kChartSwitch) {
            p.v_ = 1.0 / w;
        } else {
            p.v_ = w;
            p.inverted_ = true;
        }
        return p;
    }

    static SpherePoint infinity() { return from_inverted(0.0); }

    bool inverted() const { return inverted_; }
    bool is_infinity() const { return inverted_ && v_ == 0.0; }
    bool is_zero() const { return !inverted_ && v_ == 0.0; }

    // Raw stored value: z in the standard chart, 1/z in the inverted one.
    Complex chart_value() const { return v_; }

    // Finite complex value; rejects the point at infinity.
    Complex to_complex() const {
        if (inverted_) {
            if (v_ == 0.0) throw argument_error("point at infinity has no finite value");
            return 1.0 / v_;
        }
        return v_;
    }

    bool operator==(const SpherePoint& o) const {
        return inverted_ == o.inverted_ && v_ == o.v_;
    }

private:
    Complex v_{0.0, 0.0};
    bool inverted_ = false;
};

// Chordal distance on the sphere of diameter 2: d(z,w) = 2|z-w| /
// sqrt((1+|z|^2)(1+|w|^2)), d(z,inf) = 2/sqrt(1+|z|^2).  Computed from the
// stored chart values only, so it is overflow-safe for any inputs.
inline double chordal(const SpherePoint& a, const SpherePoint& b) {
    const Complex u = a.chart_value();
    const Complex v = b.chart_value();
    const double su = 1.0 + std::norm(u);
    const double sv = 1.0 + std::norm(v);
    if (a.inverted() == b.inverted())
        return 2.0 * std::abs(u - v) / std::sqrt(su * sv);
    // Mixed charts: d(z, 1/w) with z = u standard, w = v inverted.
    return 2.0 * std::abs(u * v - 1.0) / std::sqrt(su * sv);
}

inline double chordal(Complex a, Complex b) {
    return chordal(SpherePoint::from_complex(a), SpherePoint::from_complex(b));
}

} // namespace carpet
