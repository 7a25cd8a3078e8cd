#pragma once

#include <vector>

#include "carpet/polynomial.hpp"

namespace carpet {

// All deg(p) roots with multiplicity, via simultaneous (Aberth–Ehrlich)
// iteration with deterministic circle initialization, then Newton-polished
// to residual |p(r)| <= 1e-12 * max|coeff| * (1+|r|)^deg.
// Throws numerical_error (carrying the best iterates) if the iteration cap
// of 500 sweeps is exhausted before every step drops below 1e-14*(1+|root|).
std::vector<Complex> polynomial_roots(const Polynomial& p);

// Merge points closer than `tol` into (center, multiplicity) clusters;
// greedy in input order, centers are cluster means.
std::vector<std::pair<Complex, int>> cluster_points(const std::vector<Complex>& pts,
                                                    double tol);

} // namespace carpet
