#include "carpet/trees.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "carpet/errors.hpp"

namespace carpet::trees {
namespace {

void require_weights(const std::vector<int>& w, std::size_t n, const char* kind) {
    if (w.size() != n)
        throw argument_error(std::string(kind) + " takes exactly " + std::to_string(n) +
                             " weights, got " + std::to_string(w.size()));
    for (int x : w)
        if (x < 1) throw argument_error("weights must be positive integers");
}

} // namespace

WeightedDynamicalTree builtin_tree(TreeKind kind, const std::vector<int>& weights) {
    WeightedDynamicalTree t;
    switch (kind) {
    case TreeKind::HP:
        require_weights(weights, 4, "HP");
        t.edge_images = {{1}, {2}, {0, 3}, {0, 1}};
        break;
    case TreeKind::HQ:
        require_weights(weights, 2, "HQ");
        t.edge_images = {{0, 1}, {0, 1}};
        break;
    case TreeKind::HR:
        require_weights(weights, 3, "HR");
        t.edge_images = {{1}, {2}, {0}};
        break;
    }
    t.weights = weights;
    t.edge_count = static_cast<int>(t.edge_images.size());
    t.vertex_count = t.edge_count + 1; // stars/paths: one more vertex than edges
    return t;
}

TransitionMatrix transition_matrix(const WeightedDynamicalTree& tree) {
    const int n = tree.edge_count;
    TransitionMatrix m(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j : tree.edge_images[i]) m[i][j] = 1.0 / tree.weights[i];
    return m;
}

double leading_eigenvalue(const TransitionMatrix& m) {
    const std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw argument_error("transition matrix must be square");
    if (n == 0) throw argument_error("empty matrix");

    // Power iteration on A = M + I: spectral radius maps exactly to
    // rho(M) + 1 for nonnegative M, and the shift makes periodic patterns
    // (HR's cyclic matrix) converge geometrically.
    std::vector<double> x(n, 1.0 / std::sqrt(double(n))), y(n);
    double prev = -1.0;
    const int cap = 100000;
    for (int it = 0; it < cap; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            double s = x[i]; // the +I term
            for (std::size_t j = 0; j < n; ++j) s += m[i][j] * x[j];
            y[i] = s;
        }
        double rayleigh = 0.0;
        for (std::size_t i = 0; i < n; ++i) rayleigh += x[i] * y[i];
        double resid = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            resid = std::max(resid, std::abs(y[i] - rayleigh * x[i]));
        double norm = 0.0;
        for (double v : y) norm += v * v;
        norm = std::sqrt(norm);
        if (norm == 0.0) return 0.0; // M nilpotent enough to kill the vector: rho = 0
        for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / norm;
        if (std::abs(rayleigh - prev) < 1e-13 && resid < 1e-13) return rayleigh - 1.0;
        prev = rayleigh;
    }
    throw numerical_error("power iteration did not converge within 1e5 sweeps");
}

std::pair<bool, std::optional<int>> check_h1(int d0, int d1, int d2) {
    if (d0 < 1 || d1 < 1 || d2 < 1) throw argument_error("weights must be >= 1");
    const int s = d0 + d1 + d2 - 1;
    if (s % 2 != 0) return {false, std::nullopt};
    const int dhat = s / 2;
    const bool ok = dhat >= 2 && dhat >= std::max({d0, d1, d2});
    return {ok, dhat};
}

namespace {

// Solve (I - M) v = 1 by Gaussian elimination with partial pivoting;
// valid whenever rho(M) < 1 (then I - M is invertible and v > 0).
std::vector<double> solve_perron(const TransitionMatrix& m) {
    const std::size_t n = m.size();
    std::vector<std::vector<double>> a(n, std::vector<double>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = (i == j ? 1.0 : 0.0) - m[i][j];
        a[i][n] = 1.0;
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        std::swap(a[col], a[piv]);
        if (a[col][col] == 0.0) throw numerical_error("singular system for Perron vector");
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            for (std::size_t j = col; j <= n; ++j) a[r][j] -= f * a[col][j];
        }
    }
    std::vector<double> v(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = a[i][n];
        for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * v[j];
        v[i] = s / a[i][i];
    }
    return v;
}

} // namespace

SpectralReport is_unobstructed(const WeightedDynamicalTree& tree) {
    const TransitionMatrix m = transition_matrix(tree);
    SpectralReport rep;
    rep.leading_eigenvalue = leading_eigenvalue(m);
    // Integer weights put the true eigenvalue either exactly on the
    // obstruction boundary or well away from it; snap the numerical value
    // so the strict < 1 test classifies boundary cases as obstructed.
    if (std::abs(rep.leading_eigenvalue - 1.0) <= 1e-12) rep.leading_eigenvalue = 1.0;
    rep.unobstructed = rep.leading_eigenvalue < 1.0;
    if (rep.unobstructed) {
        rep.perron_vector = solve_perron(m);
        // MV = V - 1 by construction; fail loudly if roundoff ever breaks
        // the strict inequality the report promises.
        const std::size_t n = m.size();
        for (std::size_t i = 0; i < n; ++i) {
            double mv = 0.0;
            for (std::size_t j = 0; j < n; ++j) mv += m[i][j] * rep.perron_vector[j];
            if (!(mv < rep.perron_vector[i]) || !(rep.perron_vector[i] > 0.0))
                throw numerical_error("Perron vector failed the strict MV < V check");
        }
    } else {
        // Report the dominant direction anyway (eigenvector of M + I).
        const std::size_t n = m.size();
        std::vector<double> x(n, 1.0), y(n);
        for (int it = 0; it < 20000; ++it) {
            for (std::size_t i = 0; i < n; ++i) {
                double s = x[i];
                for (std::size_t j = 0; j < n; ++j) s += m[i][j] * x[j];
                y[i] = s;
            }
            double norm = 0.0;
            for (double v : y) norm += v * v;
            norm = std::sqrt(norm);
            for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / norm;
        }
        rep.perron_vector = x;
    }
    return rep;
}

std::string to_json(const WeightedDynamicalTree& tree) {
    nlohmann::json j;
    j["edges"] = tree.edge_count;
    j["images"] = tree.edge_images;
    j["weights"] = tree.weights;
    return j.dump();
}

double hp_characteristic_root(int d0, int d1, int d2, int d3) {
    const double b = 1.0 / (double(d0) * d1 * d2) + 1.0 / (double(d1) * d2 * d3);
    const double c = 1.0 / (double(d0) * d1 * d2 * d3);
    auto p = [&](double x) { return x * x * x * x - b * x - c; };
    // p(0) = -c < 0 and p(2) > 0 for weights >= 1; bisect.
    double lo = 0.0, hi = 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (p(mid) > 0.0 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace carpet::trees
