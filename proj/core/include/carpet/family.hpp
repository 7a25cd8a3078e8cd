#pragma once

#include <array>
#include <string>
#include <vector>

#include "carpet/rational.hpp"
#include "carpet/sphere.hpp"

namespace carpet::family {

// The cubic with super-attracting cycle lambda -> 1 -> inf -> 0 -> lambda:
//   f(z) = (1-l) [ (1-4l+6l^2-l^3) z - 2l^3 ]
//          / ( (z-1)^2 [ (1-l-l^2) z - 2l^2 (1-l) ] ).
// At lambda = 0 the shared factor z cancels and the map degenerates to the
// degree-2 limit 1/(z-1)^2 with the period-3 cycle 1 -> inf -> 0.
struct PersianCarpetMap {
    Complex lambda;
    RationalMap map;
    std::array<SpherePoint, 4> cycle; // z0=lambda, z1=1, z2=inf, z3=0
    Complex free_critical;            // lambda'
    bool verified = false;            // |lambda| < 0.1 and away from degeneracies
};

PersianCarpetMap build_f_lambda(Complex lambda);

// Closed forms of the derivation.
Complex a1_closed(Complex lambda);
Complex b1p_closed(Complex lambda);
Complex lambda_prime_closed(Complex lambda);

// Solve the 2x2 linear system
//   l a1 - l (1-l)^2 b1' = 1 - 3l + l^2
//     a1 - (1-l)(1-3l) b1' = -2 + 2l
// by elimination with pivoting; matches the closed forms to 1e-12 relative.
struct DerivedCoefficients {
    Complex a1;
    Complex b1p;
};
DerivedCoefficients derive_coefficients(Complex lambda);

// f(z) = (a1 z + lambda) / ((z-1)^2 (b1' z + 1)); pointwise equal to
// build_f_lambda's map (the two differ by a constant scaling of num/den).
RationalMap assemble_from_coefficients(Complex a1, Complex b1p, Complex lambda);

// Quadratic parameters with 0 periodic of exact period n (n <= 8): roots
// of the critical-orbit polynomial G_n (G_1 = c, G_{k+1} = G_k^2 + c) with
// the roots of every proper-divisor stage sieved out at tolerance 1e-8.
// `c` is the root with the largest imaginary part.
struct PCFParameter {
    int period = 0;
    Complex c;
    std::vector<Complex> all_roots;
};
PCFParameter solve_pcf_parameter(int period);

// n+1 points; stops early with `degenerate` set when evaluation hits an
// indeterminate form.
struct OrbitResult {
    std::vector<SpherePoint> points;
    bool degenerate = false;
};
OrbitResult orbit(const RationalMap& f, const SpherePoint& z0, int n);

// The five order-of-magnitude containments around the cycle, checked with
// a uniform constant K by boundary sampling plus the modulus principle
// (critical points interior to a region are evaluated explicitly):
//   1. |f(lambda') - 1| <= K |l|
//   2. |f| >= |l|^-2 / K^3   on D(1, K|l|)          (min-modulus, 64 samples)
//   3. |f| <= K^3 |l|^4      outside |z| = |l|^-2/K (256 samples + infinity)
//   4. |f - l| <= K |l|^2    on D(0, K|l|^4)        (256 samples)
//   5. |f - 1| <= K^3 |l|^3  on D(l, K|l|^2)        (256 samples)
struct LadderRung {
    bool pass = false;
    double measured = 0.0;
    double threshold = 0.0;
    double margin = 0.0; // how many times inside the allowed region (> 1 passes)
    std::string description;
};

struct LadderReport {
    Complex lambda;
    double K = 0.0;
    std::array<LadderRung, 5> rungs;
    bool all() const {
        for (const auto& r : rungs)
            if (!r.pass) return false;
        return true;
    }
};

LadderReport magnitude_ladder_check(Complex lambda, double K = 20.0);

// z -> z^{d_inf} + c + lambda / z^{d_0}, with the expansion-rate flag
// (H0): 1/d_inf + 1/d_0 < 1.
struct McMullenMap {
    int d_inf = 0;
    int d_0 = 0;
    Complex c;
    Complex lambda;
    RationalMap map;
    bool h0 = false;
};

McMullenMap build_mcmullen(int d_inf, int d_0, Complex c, Complex lambda);

} // namespace carpet::family
