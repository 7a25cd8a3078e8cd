#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "carpet/sphere.hpp"

namespace carpet::moduli {

// Positive solution of the four-modulus system attached to the 4-edge
// tree: x = mu * V with V the Perron vector of the transition matrix, and
// the four strict inequalities
//   x1/d0 < x0,  x2/d1 < x1,  (x0 + x3)/d2 < x2,  (x0 + x1 + C)/d3 < x3
// verified post hoc; `margins` holds each right-minus-left gap.
struct ModuliSolution {
    std::array<double, 4> x{};
    double C = 1.0;
    double mu = 0.0;
    std::array<double, 4> margins{};
};

ModuliSolution solve_moduli(int d0, int d1, int d2, int d3, double C);

// Equipotential levels in (0,1), keyed by name ("beta0", "beta3+",
// "beta3-", plus derived "beta1", "beta2"); level-to-modulus bookkeeping
// is mod = (1/2pi) log(L/L').
struct EquipotentialLevels {
    std::map<std::string, double> levels;
    double gap_modulus = 0.0; // mod(A(beta0, beta3+)) — the > 1 buffer
};

EquipotentialLevels levels_from_moduli(const ModuliSolution& sol, double extra_margin = 1.1);

// |lambda| solved from 2 |lambda|^{n/(n+n')} = 4/e^pi, and the modulus
// bound (1/n + 1/n')/2 <= 1.
struct AnnulusDiskBound {
    double lambda_mod = 0.0;
    double bound = 0.0;
};

AnnulusDiskBound annulus_disk_bound(int n, int nprime);

// Numeric containment checks for g(z) = z^n + lambda/z^{n'} at the lambda
// above: (a) |g| <= 2|lambda|^{n/(n+n')} < 1 on the middle circle,
// (b) |g| < 1 at each of the n+n' free critical points, (c) |g| > 1 on the
// two bounding circles at radius factors e^{-pi/n'} and e^{pi/n}.
struct AnnulusCheckReport {
    bool circle_ok = false;
    bool critical_ok = false;
    bool outside_ok = false;
    double circle_margin = 0.0;   // min over samples of bound - |g|
    double critical_margin = 0.0; // min over critical points of 1 - |g|
    double outside_margin = 0.0;  // min over samples of |g| - 1
    bool all() const { return circle_ok && critical_ok && outside_ok; }
};

AnnulusCheckReport mcmullen_annulus_check(int n, int nprime);

// (1/(2 sqrt(eps))) log(1/(1 - C eps)), for 0 < eps < 1/C.
double separating_circle_bound(double eps, double C);

} // namespace carpet::moduli
