#pragma once

#include <optional>
#include <string>
#include <vector>

namespace carpet::trees {

enum class TreeKind { HP, HQ, HR };

// Abstract weighted dynamical tree: edges indexed 0..edge_count-1, each
// carrying the ordered set of edges its image covers and a positive
// integer weight.  Geometry is out of scope.
struct WeightedDynamicalTree {
    int vertex_count = 0;
    int edge_count = 0;
    std::vector<std::vector<int>> edge_images;
    std::vector<int> weights;
};

using TransitionMatrix = std::vector<std::vector<double>>;

struct SpectralReport {
    double leading_eigenvalue = 0.0;
    std::vector<double> perron_vector;
    bool unobstructed = false;
};

// The three built-in combinatorial shapes:
//   HP (4 edges): e0->{e1}, e1->{e2}, e2->{e0,e3}, e3->{e0,e1}
//   HQ (2 edges): both edges cover both edges
//   HR (3 edges): e0->e1->e2->e0 cyclically
WeightedDynamicalTree builtin_tree(TreeKind kind, const std::vector<int>& weights);

// m[i][j] = 1/weights[i] iff j is in edge_images[i], else 0.
TransitionMatrix transition_matrix(const WeightedDynamicalTree& tree);

// Spectral radius of a nonnegative matrix.  Power iteration runs on the
// unit shift M + I (exact spectral mapping for nonnegative M) so cyclic
// image patterns like HR's converge; stops when both the Rayleigh step and
// the eigen-residual drop below 1e-13, cap 1e5 sweeps.
double leading_eigenvalue(const TransitionMatrix& m);

// dhat = (d0+d1+d2-1)/2 must be an integer >= 2 and >= max(d0,d1,d2).
// The integer is returned whenever it exists (even if the bound fails).
std::pair<bool, std::optional<int>> check_h1(int d0, int d1, int d2);

// Full spectral report; unobstructed iff leading eigenvalue < 1, in which
// case perron_vector solves (I - M) V = 1 so that MV = V - 1 < V strictly.
SpectralReport is_unobstructed(const WeightedDynamicalTree& tree);

// {"edges": N, "images": [[...]], "weights": [...]}
std::string to_json(const WeightedDynamicalTree& tree);

// Largest real root of X^4 - (1/(d0 d1 d2) + 1/(d1 d2 d3)) X - 1/(d0 d1 d2 d3),
// the closed-form eigenvalue of the HP shape; bisection oracle.
double hp_characteristic_root(int d0, int d1, int d2, int d3);

} // namespace carpet::trees
