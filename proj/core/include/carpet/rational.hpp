#pragma once

#include <utility>
#include <vector>

#include "carpet/polynomial.hpp"
#include "carpet/roots.hpp"
#include "carpet/sphere.hpp"

namespace carpet {

// Quotient of two polynomials.  The constructor stores what it is given
// (derivatives legitimately carry shared factors); `normalized()` cancels
// numerically-common roots, and `shares_root()` reports whether any exist.
class RationalMap {
public:
    RationalMap() : num_{Complex(0.0)}, den_{Complex(1.0)}, degree_(0) {}
    RationalMap(Polynomial num, Polynomial den);

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    int degree() const { return degree_; }

    // True iff numerator and denominator have roots within `tol`.
    bool shares_root(double tol = 1e-9) const;

    // Cancel common roots (cluster tolerance `tol`) and rebuild from the
    // surviving root sets; leading-coefficient ratio is preserved.
    RationalMap normalized(double tol = 1e-9) const;

private:
    Polynomial num_, den_;
    int degree_;
};

// f(z) with full chart handling: inputs beyond the chart switch are fed
// through the reversed-coefficient form of f(1/w), poles map to infinity,
// and a simultaneous numerator/denominator zero raises degenerate_error.
SpherePoint eval(const RationalMap& f, const SpherePoint& z);
SpherePoint eval(const RationalMap& f, Complex z);

// (num' den - num den') / den^2, shared factors NOT cancelled.
RationalMap derivative(const RationalMap& f);

// Exactly 2 deg(f) - 2 critical points with multiplicity; criticality at
// infinity is recovered from the degree deficit of num' den - num den'.
std::vector<std::pair<SpherePoint, int>> critical_points(const RationalMap& f);

// z -> (az + b)/(cz + d), ad - bc != 0.  Composition, inversion and
// conjugation act exactly on coefficients (no root finding involved).
class MobiusMap {
public:
    MobiusMap(Complex a, Complex b, Complex c, Complex d);

    Complex a() const { return a_; }
    Complex b() const { return b_; }
    Complex c() const { return c_; }
    Complex d() const { return d_; }

    MobiusMap inverse() const { return MobiusMap(d_, -b_, -c_, a_); }
    MobiusMap compose(const MobiusMap& o) const; // this after o

    SpherePoint operator()(const SpherePoint& z) const;

private:
    Complex a_, b_, c_, d_;
};

// m^{-1} . f . m as a rational map, computed on coefficients.
RationalMap conjugate(const RationalMap& f, const MobiusMap& m);

// left . f . right as a rational map, computed on coefficients.
RationalMap compose(const MobiusMap& left, const RationalMap& f,
                    const MobiusMap& right);

// Local degree of f at z: Mobius maps move z and f(z) to the origin, then
// the vanishing order of the numerator there is counted against the
// largest coefficient at relative tolerance `rel_tol`.
int local_degree(const RationalMap& f, const SpherePoint& z,
                 double rel_tol = 1e-8);

} // namespace carpet
