#include "carpet/rational.hpp"

#include <algorithm>
#include <cmath>

#include "carpet/errors.hpp"

namespace carpet {
namespace {

// Relative smallness threshold for "this Horner result is a zero hit".
constexpr double kHitTol = 1e-13;

std::vector<Complex> safe_roots(const Polynomial& p) {
    if (p.degree() < 1) return {};
    return polynomial_roots(p);
}

} // namespace

RationalMap::RationalMap(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw argument_error("rational map with zero denominator");
    degree_ = std::max(num_.degree(), den_.degree());
}

bool RationalMap::shares_root(double tol) const {
    const auto rn = safe_roots(num_);
    const auto rd = safe_roots(den_);
    for (Complex a : rn)
        for (Complex b : rd)
            if (std::abs(a - b) <= tol) return true;
    return false;
}

RationalMap RationalMap::normalized(double tol) const {
    auto rn = safe_roots(num_);
    auto rd = safe_roots(den_);
    std::vector<bool> keep_d(rd.size(), true);
    std::vector<Complex> kept_n;
    for (Complex a : rn) {
        bool cancelled = false;
        for (std::size_t j = 0; j < rd.size(); ++j) {
            if (keep_d[j] && std::abs(a - rd[j]) <= tol) {
                keep_d[j] = false;
                cancelled = true;
                break;
            }
        }
        if (!cancelled) kept_n.push_back(a);
    }
    std::vector<Complex> kept_d;
    for (std::size_t j = 0; j < rd.size(); ++j)
        if (keep_d[j]) kept_d.push_back(rd[j]);
    return RationalMap(Polynomial::from_roots(kept_n, num_.leading()),
                       Polynomial::from_roots(kept_d, den_.leading()));
}

SpherePoint eval(const RationalMap& f, const SpherePoint& z) {
    Complex n, d;
    double sn, sd;
    if (!z.inverted()) {
        std::tie(n, sn) = f.num().eval_with_scale(z.chart_value());
        std::tie(d, sd) = f.den().eval_with_scale(z.chart_value());
    } else {
        // f(1/w) = rev(num)(w) / rev(den)(w), both reversed after padding
        // to the common degree, evaluated at the stored w.
        const int deg = std::max(f.num().degree(), f.den().degree());
        std::tie(n, sn) = f.num().reversed(deg).eval_with_scale(z.chart_value());
        std::tie(d, sd) = f.den().reversed(deg).eval_with_scale(z.chart_value());
    }
    const bool n_hit = std::abs(n) <= kHitTol * sn;
    const bool d_hit = std::abs(d) <= kHitTol * sd;
    if (d_hit && n_hit)
        throw degenerate_error("0/0 evaluation: input is within tolerance of a shared root");
    if (d == 0.0 || d_hit) return SpherePoint::infinity();
    return SpherePoint::from_complex(n / d);
}

SpherePoint eval(const RationalMap& f, Complex z) {
    return eval(f, SpherePoint::from_complex(z));
}

RationalMap derivative(const RationalMap& f) {
    const Polynomial w = f.num().derivative() * f.den() - f.num() * f.den().derivative();
    return RationalMap(w, f.den() * f.den());
}

std::vector<std::pair<SpherePoint, int>> critical_points(const RationalMap& f) {
    const int d = f.degree();
    if (d < 2) throw argument_error("critical points need degree >= 2");
    const int expected = 2 * d - 2;

    // Roots of W = num' den - num den' are exactly the finite critical
    // points (including multiplicity m-1 at each order-m pole); whatever is
    // missing from the Riemann–Hurwitz count sits at infinity.
    Polynomial w = (f.num().derivative() * f.den() - f.num() * f.den().derivative())
                       .trimmed_leading(1e-12);

    std::vector<std::pair<SpherePoint, int>> out;
    int finite = 0;
    if (!w.is_zero() && w.degree() >= 1) {
        for (auto& [center, mult] : cluster_points(polynomial_roots(w), 1e-7)) {
            out.emplace_back(SpherePoint::from_complex(center), mult);
            finite += mult;
        }
    }
    const int at_inf = expected - finite;
    if (at_inf < 0)
        throw numerical_error("critical point count exceeds 2 deg - 2; "
                              "derivative numerator was not trimmed cleanly");
    if (at_inf > 0) out.emplace_back(SpherePoint::infinity(), at_inf);
    return out;
}

MobiusMap::MobiusMap(Complex a, Complex b, Complex c, Complex d)
    : a_(a), b_(b), c_(c), d_(d) {
    if (a * d - b * c == 0.0) throw argument_error("Mobius map needs ad - bc != 0");
}

MobiusMap MobiusMap::compose(const MobiusMap& o) const {
    return MobiusMap(a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_,
                     c_ * o.a_ + d_ * o.c_, c_ * o.b_ + d_ * o.d_);
}

SpherePoint MobiusMap::operator()(const SpherePoint& z) const {
    if (z.is_infinity()) {
        if (c_ == 0.0) return SpherePoint::infinity();
        return SpherePoint::from_complex(a_ / c_);
    }
    Complex n, d;
    if (z.inverted()) { // z = 1/w: (a/w + b)/(c/w + d) = (a + bw)/(c + dw)
        n = a_ + b_ * z.chart_value();
        d = c_ + d_ * z.chart_value();
    } else {
        n = a_ * z.chart_value() + b_;
        d = c_ * z.chart_value() + d_;
    }
    if (d == 0.0) return SpherePoint::infinity();
    return SpherePoint::from_complex(n / d);
}

namespace {

Polynomial power(const Polynomial& p, int e) {
    Polynomial r{Complex(1.0)};
    for (int i = 0; i < e; ++i) r = r * p;
    return r;
}

// P((az+b)/(cz+d)) * (cz+d)^deg(P), exact on coefficients.
Polynomial compose_mobius_clear(const Polynomial& p, const MobiusMap& m) {
    const Polynomial lin_n{m.b(), m.a()}; // az + b, lowest first
    const Polynomial lin_d{m.d(), m.c()};
    Polynomial acc{p.coeffs().back()};
    for (int k = p.degree() - 1; k >= 0; --k)
        acc = acc * lin_n + Polynomial{p.coeff(k)} * power(lin_d, p.degree() - k);
    return acc;
}

} // namespace

RationalMap compose(const MobiusMap& left, const RationalMap& f,
                    const MobiusMap& right) {
    // f.right with the (cz+d) powers cleared to a common denominator,
    // then `left` acts linearly on the numerator/denominator pair.
    const int deg = std::max(f.num().degree(), f.den().degree());
    const Polynomial lin_d{right.d(), right.c()};
    Polynomial n1 = compose_mobius_clear(f.num(), right) *
                    power(lin_d, deg - f.num().degree());
    Polynomial d1 = compose_mobius_clear(f.den(), right) *
                    power(lin_d, deg - f.den().degree());
    Polynomial n2 = n1 * left.a() + d1 * left.b();
    Polynomial d2 = n1 * left.c() + d1 * left.d();
    return RationalMap(n2.trimmed_leading(1e-14), d2.trimmed_leading(1e-14));
}

RationalMap conjugate(const RationalMap& f, const MobiusMap& m) {
    return compose(m.inverse(), f, m);
}

int local_degree(const RationalMap& f, const SpherePoint& z, double rel_tol) {
    if (f.degree() < 1) throw argument_error("local degree needs a nonconstant map");
    const SpherePoint w = eval(f, z);

    // R sends 0 to z, L sends f(z) to 0, both exactly in the charts the
    // points are stored in; the numerator of L.f.R then vanishes at the
    // origin to exactly the local degree.
    const MobiusMap right = z.inverted()
                                ? MobiusMap(0.0, 1.0, 1.0, z.chart_value())
                                : MobiusMap(1.0, z.chart_value(), 0.0, 1.0);
    const MobiusMap left = w.inverted()
                               ? MobiusMap(-w.chart_value(), 1.0, 1.0, 0.0)
                               : MobiusMap(1.0, -w.chart_value(), 0.0, 1.0);

    const RationalMap g = compose(left, f, right);
    const Polynomial& n = g.num();
    double cap = 0.0;
    for (Complex c : n.coeffs()) cap = std::max(cap, std::abs(c));
    if (cap == 0.0) throw numerical_error("composed numerator collapsed to zero");
    int k = 0;
    while (k <= n.degree() && std::abs(n.coeff(k)) <= rel_tol * cap) ++k;
    if (k == 0 || k > n.degree())
        throw numerical_error("local degree not resolvable at this tolerance");
    return k;
}

} // namespace carpet
