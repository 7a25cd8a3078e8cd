#include "carpet/roots.hpp"

#include <algorithm>
#include <cmath>

#include "carpet/errors.hpp"

namespace carpet {
namespace {

// p and p' at z in one Horner pass.
std::pair<Complex, Complex> horner2(const std::vector<Complex>& c, Complex z) {
    Complex p = c.back(), dp = 0.0;
    for (std::size_t k = c.size() - 1; k > 0; --k) {
        dp = dp * z + p;
        p = p * z + c[k - 1];
    }
    return {p, dp};
}

double residual_target(const Polynomial& p, double abs_r) {
    return 1e-12 * p.coeff_scale() * std::pow(1.0 + abs_r, p.degree());
}

void newton_polish(const Polynomial& p, Complex& r) {
    for (int it = 0; it < 40; ++it) {
        auto [v, dv] = horner2(p.coeffs(), r);
        if (std::abs(v) <= residual_target(p, std::abs(r))) return;
        if (dv == 0.0) return;
        const Complex step = v / dv;
        r -= step;
        if (std::abs(step) <= 1e-16 * (1.0 + std::abs(r))) return;
    }
}

std::vector<Complex> aberth(const Polynomial& p) {
    const int n = p.degree();
    const auto& c = p.coeffs();

    // Deterministic start: Cauchy-bound circle with an asymmetric phase so
    // no initial guess sits on a symmetry axis of the root set.
    double cmax = 0.0;
    for (int k = 0; k < n; ++k) cmax = std::max(cmax, std::abs(c[k] / c[n]));
    const double radius = 1.0 + cmax;
    std::vector<Complex> z(n);
    for (int j = 0; j < n; ++j) {
        const double th = 2.0 * M_PI * j / n + 0.4;
        z[j] = radius * Complex(std::cos(th), std::sin(th));
    }

    const int cap = 500;
    for (int it = 0; it < cap; ++it) {
        double worst = 0.0;
        for (int j = 0; j < n; ++j) {
            auto [v, dv] = horner2(c, z[j]);
            if (v == 0.0) continue;
            Complex w;
            if (dv == 0.0) {
                w = Complex(1e-12, 1e-12); // nudge off a critical point
            } else {
                w = v / dv;
            }
            Complex sum = 0.0;
            for (int k = 0; k < n; ++k)
                if (k != j) sum += 1.0 / (z[j] - z[k]);
            const Complex denom = 1.0 - w * sum;
            const Complex step = denom == 0.0 ? w : w / denom;
            z[j] -= step;
            worst = std::max(worst, std::abs(step) / (1.0 + std::abs(z[j])));
        }
        if (worst < 1e-14) return z;
    }

    // Accept anyway if every iterate already meets the residual target.
    bool ok = true;
    for (int j = 0; j < n; ++j)
        if (std::abs(p(z[j])) > residual_target(p, std::abs(z[j]))) { ok = false; break; }
    if (ok) return z;
    throw numerical_error("root iteration did not converge within 500 sweeps", z);
}

} // namespace

std::vector<Complex> polynomial_roots(const Polynomial& p) {
    if (p.is_zero()) throw argument_error("cannot take roots of the zero polynomial");
    if (p.degree() < 1) throw argument_error("cannot take roots of a constant");

    // Factor exact zeros at the origin first; they are common (derivative
    // numerators) and would otherwise slow the simultaneous iteration.
    std::vector<Complex> coeffs = p.coeffs();
    std::vector<Complex> roots;
    while (coeffs.size() > 1 && coeffs.front() == 0.0) {
        roots.push_back(0.0);
        coeffs.erase(coeffs.begin());
    }
    Polynomial q{std::vector<Complex>(coeffs)};

    if (q.degree() == 1) {
        roots.push_back(-q.coeff(0) / q.coeff(1));
        return roots;
    }
    if (q.degree() == 2) {
        const Complex a = q.coeff(2), b = q.coeff(1), cc = q.coeff(0);
        Complex s = std::sqrt(b * b - 4.0 * a * cc);
        if (std::real(std::conj(b) * s) < 0.0) s = -s; // align s with b so b+s never cancels
        const Complex q2 = -0.5 * (b + s);
        roots.push_back(q2 / a);
        roots.push_back(q2 == 0.0 ? Complex(0.0) : cc / q2);
        return roots;
    }
    if (q.degree() >= 3) {
        auto z = aberth(q);
        for (Complex& r : z) newton_polish(q, r);
        roots.insert(roots.end(), z.begin(), z.end());
    }
    return roots;
}

std::vector<std::pair<Complex, int>> cluster_points(const std::vector<Complex>& pts,
                                                    double tol) {
    std::vector<std::pair<Complex, int>> out;
    std::vector<Complex> sums;
    for (Complex p : pts) {
        bool placed = false;
        for (std::size_t i = 0; i < out.size(); ++i) {
            if (std::abs(p - out[i].first) <= tol) {
                sums[i] += p;
                out[i].second += 1;
                out[i].first = sums[i] / double(out[i].second);
                placed = true;
                break;
            }
        }
        if (!placed) {
            out.emplace_back(p, 1);
            sums.push_back(p);
        }
    }
    return out;
}

} // namespace carpet
