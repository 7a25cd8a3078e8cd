#include "carpet/family.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "carpet/errors.hpp"
#include "carpet/roots.hpp"

namespace carpet::family {
namespace {

void require_nondegenerate(Complex lambda) {
    if (lambda == Complex(1.0))
        throw argument_error("degenerate lambda: factor (1 - lambda) vanishes");
    const Complex q = 1.0 - lambda - lambda * lambda;
    if (std::abs(q) < 1e-12)
        throw argument_error("degenerate lambda: factor (1 - lambda - lambda^2) vanishes");
}

} // namespace

PersianCarpetMap build_f_lambda(Complex lambda) {
    require_nondegenerate(lambda);

    PersianCarpetMap pc;
    pc.lambda = lambda;
    pc.cycle = {SpherePoint::from_complex(lambda), SpherePoint::from_complex(1.0),
                SpherePoint::infinity(), SpherePoint::from_complex(0.0)};
    pc.free_critical = lambda_prime_closed(lambda);

    if (lambda == Complex(0.0)) {
        // The z/z factor cancels exactly: f0(z) = 1/(z-1)^2.
        pc.map = RationalMap(Polynomial{1.0}, Polynomial{1.0, -2.0, 1.0});
        pc.verified = false; // period-3 limit, outside the degree-3 family
        return pc;
    }

    const Complex one = 1.0;
    const Complex n1 = (one - lambda) * (one - 4.0 * lambda + 6.0 * lambda * lambda -
                                         lambda * lambda * lambda);
    const Complex n0 = -2.0 * lambda * lambda * lambda * (one - lambda);
    const Complex b1 = one - lambda - lambda * lambda;
    const Complex b0 = -2.0 * lambda * lambda * (one - lambda);
    // (z-1)^2 (b1 z + b0), lowest first.
    Polynomial den{b0, b1 - 2.0 * b0, b0 - 2.0 * b1, b1};
    pc.map = RationalMap(Polynomial{n0, n1}, std::move(den));
    pc.verified = std::abs(lambda) < 0.1;
    return pc;
}

Complex a1_closed(Complex l) {
    if (l == Complex(0.0)) throw argument_error("a1 closed form needs lambda != 0");
    return (1.0 - 4.0 * l + 6.0 * l * l - l * l * l) / (-2.0 * l * l);
}

Complex b1p_closed(Complex l) {
    if (l == Complex(0.0) || l == Complex(1.0))
        throw argument_error("b1' closed form needs lambda outside {0, 1}");
    return (1.0 - l - l * l) / (-2.0 * l * l * (1.0 - l));
}

Complex lambda_prime_closed(Complex l) {
    const Complex num = 1.0 - 6.0 * l + 11.0 * l * l - 10.0 * l * l * l +
                        5.0 * l * l * l * l;
    const Complex den = (1.0 - l - l * l) *
                        (1.0 - 4.0 * l + 6.0 * l * l - l * l * l);
    if (den == Complex(0.0)) throw argument_error("lambda' undefined at this lambda");
    return -l * num / den;
}

DerivedCoefficients derive_coefficients(Complex l) {
    if (l == Complex(0.0) || l == Complex(1.0))
        throw argument_error("derivation needs lambda outside {0, 1}");
    require_nondegenerate(l);

    // Row-reduce [ l   -l(1-l)^2       | 1 - 3l + l^2 ]
    //            [ 1   -(1-l)(1-3l)    | -2 + 2l      ]
    // The rows become nearly parallel as lambda -> 0 (the eliminated entries
    // cancel down to O(lambda^2)), so the combination step runs in extended
    // precision to keep the result at 1e-12 relative throughout the annulus.
    using LComplex = std::complex<long double>;
    const LComplex le(l.real(), l.imag());
    LComplex m[2][3] = {
        {le, -le * (1.0L - le) * (1.0L - le), 1.0L - 3.0L * le + le * le},
        {1.0L, -(1.0L - le) * (1.0L - 3.0L * le), -2.0L + 2.0L * le},
    };
    const int piv = std::abs(m[0][0]) >= std::abs(m[1][0]) ? 0 : 1;
    const int oth = 1 - piv;
    const LComplex f = m[oth][0] / m[piv][0];
    for (int j = 0; j < 3; ++j) m[oth][j] -= f * m[piv][j];
    if (std::abs(m[oth][1]) == 0.0L)
        throw numerical_error("singular derivation system at this lambda");
    const LComplex b1p = m[oth][2] / m[oth][1];
    const LComplex a1 = (m[piv][2] - m[piv][1] * b1p) / m[piv][0];
    return {Complex(double(a1.real()), double(a1.imag())),
            Complex(double(b1p.real()), double(b1p.imag()))};
}

RationalMap assemble_from_coefficients(Complex a1, Complex b1p, Complex lambda) {
    Polynomial num{lambda, a1};
    // (z-1)^2 (b1' z + 1), lowest first.
    Polynomial den{1.0, b1p - 2.0, 1.0 - 2.0 * b1p, b1p};
    return RationalMap(std::move(num), std::move(den));
}

namespace {

// Value and derivative of the critical-orbit recurrence G_n at c.
std::pair<Complex, Complex> g_iter(Complex c, int n) {
    Complex g = c, dg = 1.0;
    for (int k = 1; k < n; ++k) {
        dg = 2.0 * g * dg + 1.0;
        g = g * g + c;
    }
    return {g, dg};
}

// Newton-polish a sieved root against the recurrence, which stays
// well-conditioned where the coefficient form of G_8 does not.
Complex polish_pcf(Complex c, int n) {
    for (int it = 0; it < 60; ++it) {
        auto [g, dg] = g_iter(c, n);
        if (std::abs(g) <= 1e-13 || dg == Complex(0.0)) break;
        const Complex step = g / dg;
        c -= step;
        if (std::abs(step) <= 1e-15 * (1.0 + std::abs(c))) break;
    }
    return c;
}

// All 2^(n-1) roots of G_n by Aberth iteration driven by the recurrence
// (the expanded coefficients of G_7, G_8 are useless in doubles).  Every
// root lies in |c| <= 2, so the start circle at 2.2 encloses them and the
// recurrence stays finite throughout.
std::vector<Complex> g_roots(int n) {
    const int deg = 1 << (n - 1);
    std::vector<Complex> z(deg);
    for (int i = 0; i < deg; ++i)
        z[i] = std::polar(2.2, 2.0 * M_PI * (i + 0.25) / deg);
    for (int sweep = 0; sweep < 500; ++sweep) {
        double worst = 0.0;
        for (int i = 0; i < deg; ++i) {
            auto [g, dg] = g_iter(z[i], n);
            if (g == Complex(0.0)) continue;
            const Complex ratio = g / dg; // Newton correction
            if (!std::isfinite(std::abs(ratio))) {
                z[i] *= 0.97;
                worst = 1.0;
                continue;
            }
            Complex repulsion = 0.0;
            for (int j = 0; j < deg; ++j)
                if (j != i) repulsion += 1.0 / (z[i] - z[j]);
            const Complex w = ratio / (1.0 - ratio * repulsion);
            if (!std::isfinite(std::abs(w))) continue;
            z[i] -= w;
            worst = std::max(worst, std::abs(w));
        }
        if (worst <= 1e-14 * 3.0) break;
    }
    for (Complex& c : z) c = polish_pcf(c, n);
    return z;
}

// Count of exact-period-n parameters from the divisor arithmetic
// e(n) = 2^(n-1) - sum of e(m) over proper divisors m.
long expected_exact_count(int n) {
    std::vector<long> e(n + 1, 0);
    for (int k = 1; k <= n; ++k) {
        e[k] = 1l << (k - 1);
        for (int m = 1; m < k; ++m)
            if (k % m == 0) e[k] -= e[m];
    }
    return e[n];
}

} // namespace

PCFParameter solve_pcf_parameter(int period) {
    if (period < 1 || period > 8) throw argument_error("period must be in 1..8");

    PCFParameter out;
    out.period = period;

    std::vector<Complex> lower; // exact-period roots of all proper divisors
    for (int m = 1; m < period; ++m) {
        if (period % m != 0) continue;
        for (Complex r : g_roots(m)) lower.push_back(r);
    }
    for (Complex r : g_roots(period)) {
        bool known = false;
        for (Complex l : lower)
            if (std::abs(r - l) <= 1e-8) { known = true; break; }
        for (Complex s : out.all_roots)
            if (std::abs(r - s) <= 1e-8) { known = true; break; }
        if (!known) out.all_roots.push_back(r);
    }
    if (static_cast<long>(out.all_roots.size()) != expected_exact_count(period))
        throw numerical_error("root finder lost or duplicated exact-period roots");

    out.c = *std::max_element(out.all_roots.begin(), out.all_roots.end(),
                              [](Complex a, Complex b) { return a.imag() < b.imag(); });
    return out;
}

OrbitResult orbit(const RationalMap& f, const SpherePoint& z0, int n) {
    if (n < 0) throw argument_error("orbit length must be >= 0");
    OrbitResult r;
    r.points.reserve(n + 1);
    r.points.push_back(z0);
    for (int k = 0; k < n; ++k) {
        try {
            r.points.push_back(eval(f, r.points.back()));
        } catch (const degenerate_error&) {
            r.degenerate = true;
            break;
        }
    }
    return r;
}

LadderReport magnitude_ladder_check(Complex lambda, double K) {
    if (lambda == Complex(0.0)) throw argument_error("ladder needs lambda != 0");
    if (K <= 1.0) throw argument_error("K must exceed 1");
    const PersianCarpetMap pc = build_f_lambda(lambda);
    const RationalMap& f = pc.map;
    const double al = std::abs(lambda);

    LadderReport rep;
    rep.lambda = lambda;
    rep.K = K;

    // |f| at a finite sample point, infinity mapping to +inf.
    auto fabs_at = [&](Complex z) {
        const SpherePoint w = eval(f, SpherePoint::from_complex(z));
        if (w.is_infinity()) return std::numeric_limits<double>::infinity();
        return std::abs(w.to_complex());
    };
    auto fdist_at = [&](Complex z, Complex target) {
        const SpherePoint w = eval(f, SpherePoint::from_complex(z));
        if (w.is_infinity()) return std::numeric_limits<double>::infinity();
        return std::abs(w.to_complex() - target);
    };
    const std::array<Complex, 3> finite_critical = {lambda, Complex(1.0),
                                                    pc.free_critical};

    // Rung 1: the critical value sits within K|l| of the cycle point 1.
    {
        LadderRung& r = rep.rungs[0];
        r.description = "|f(lambda') - 1| <= K |lambda|";
        r.measured = fdist_at(pc.free_critical, 1.0);
        r.threshold = K * al;
        r.margin = r.threshold / r.measured;
        r.pass = r.measured <= r.threshold;
    }

    // Rung 2: D(1, K|l|) maps far out.  Minimum modulus on the boundary is
    // a true lower bound once the disk is zero-free: the only finite zero
    // is -n0/n1 ~ 2 l^3, far from 1.
    {
        LadderRung& r = rep.rungs[1];
        r.description = "|f| >= |lambda|^-2 / K^3 on D(1, K |lambda|)";
        const Complex zero = -f.num().coeff(0) / f.num().coeff(1);
        const bool zero_free = std::abs(zero - 1.0) > K * al;
        double lo = std::numeric_limits<double>::infinity();
        for (int k = 0; k < 64; ++k) {
            const double th = 2.0 * M_PI * k / 64;
            lo = std::min(lo, fabs_at(1.0 + K * al * std::polar(1.0, th)));
        }
        r.measured = lo;
        r.threshold = std::pow(al, -2.0) / (K * K * K);
        r.margin = r.measured / r.threshold;
        r.pass = zero_free && lo >= r.threshold;
    }

    // Rung 3: the exterior of |z| = |l|^-2/K maps into D(0, K^3 |l|^4).
    // f is pole-free there (poles at 1 and ~2 l^2), so the max modulus over
    // the closed exterior is attained on the bounding circle; the value at
    // infinity is also checked directly.
    {
        LadderRung& r = rep.rungs[2];
        r.description = "|f| <= K^3 |lambda|^4 outside |z| = |lambda|^-2 / K";
        const double radius = std::pow(al, -2.0) / K;
        const Complex pole = 2.0 * lambda * lambda * (1.0 - lambda) /
                             (1.0 - lambda - lambda * lambda); // root of b1 z + b0
        const bool pole_free = std::abs(pole) < radius && 1.0 < radius;
        double hi = 0.0;
        for (int k = 0; k < 256; ++k) {
            const double th = 2.0 * M_PI * k / 256;
            hi = std::max(hi, fabs_at(radius * std::polar(1.0, th)));
        }
        const SpherePoint at_inf = eval(f, SpherePoint::infinity());
        hi = std::max(hi, at_inf.is_infinity() ? std::numeric_limits<double>::infinity()
                                               : std::abs(at_inf.to_complex()));
        r.measured = hi;
        r.threshold = K * K * K * std::pow(al, 4.0);
        r.margin = r.threshold / r.measured;
        r.pass = pole_free && hi <= r.threshold;
    }

    // Rung 4: D(0, K|l|^4) maps into D(l, K|l|^2).
    {
        LadderRung& r = rep.rungs[3];
        r.description = "|f - lambda| <= K |lambda|^2 on D(0, K |lambda|^4)";
        const double radius = K * std::pow(al, 4.0);
        double hi = 0.0;
        for (int k = 0; k < 256; ++k) {
            const double th = 2.0 * M_PI * k / 256;
            hi = std::max(hi, fdist_at(radius * std::polar(1.0, th), lambda));
        }
        for (Complex cp : finite_critical)
            if (std::abs(cp) <= radius) hi = std::max(hi, fdist_at(cp, lambda));
        r.measured = hi;
        r.threshold = K * al * al;
        r.margin = r.threshold / r.measured;
        r.pass = hi <= r.threshold;
    }

    // Rung 5: D(l, K|l|^2) maps into D(1, K^3 |l|^3); the center is itself
    // a critical point of the restriction and f(l) = 1 contributes zero.
    {
        LadderRung& r = rep.rungs[4];
        r.description = "|f - 1| <= K^3 |lambda|^3 on D(lambda, K |lambda|^2)";
        const double radius = K * al * al;
        double hi = 0.0;
        for (int k = 0; k < 256; ++k) {
            const double th = 2.0 * M_PI * k / 256;
            hi = std::max(hi, fdist_at(lambda + radius * std::polar(1.0, th), 1.0));
        }
        for (Complex cp : finite_critical)
            if (std::abs(cp - lambda) <= radius) hi = std::max(hi, fdist_at(cp, 1.0));
        r.measured = hi;
        r.threshold = K * K * K * al * al * al;
        r.margin = r.threshold / r.measured;
        r.pass = hi <= r.threshold;
    }

    return rep;
}

McMullenMap build_mcmullen(int d_inf, int d_0, Complex c, Complex lambda) {
    if (d_inf < 1 || d_0 < 1) throw argument_error("exponents must be >= 1");
    McMullenMap m;
    m.d_inf = d_inf;
    m.d_0 = d_0;
    m.c = c;
    m.lambda = lambda;
    // (z^{d_inf + d_0} + c z^{d_0} + lambda) / z^{d_0}
    std::vector<Complex> num(d_inf + d_0 + 1, 0.0);
    num[0] = lambda;
    num[d_0] = c;
    num[d_inf + d_0] = 1.0;
    std::vector<Complex> den(d_0 + 1, 0.0);
    den[d_0] = 1.0;
    m.map = RationalMap(Polynomial(std::move(num)), Polynomial(std::move(den)));
    m.h0 = 1.0 / d_inf + 1.0 / d_0 < 1.0;
    return m;
}

} // namespace carpet::family
