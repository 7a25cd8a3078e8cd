#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "carpet/sphere.hpp"

namespace carpet {

// Dense polynomial, coefficients lowest degree first.  Exact trailing-zero
// coefficients are trimmed on construction; the zero polynomial is kept as
// the single coefficient 0.
class Polynomial {
public:
    Polynomial() : c_{Complex(0.0)} {}
    Polynomial(std::initializer_list<Complex> coeffs) : c_(coeffs) { trim(); }
    explicit Polynomial(std::vector<Complex> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Polynomial from_roots(const std::vector<Complex>& roots, Complex leading = 1.0) {
        std::vector<Complex> c{leading};
        for (Complex r : roots) {
            c.push_back(0.0);
            for (std::size_t k = c.size() - 1; k > 0; --k) c[k] = c[k - 1] - r * c[k];
            c[0] *= -r;
        }
        return Polynomial(std::move(c));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.size() == 1 && c_[0] == 0.0; }
    const std::vector<Complex>& coeffs() const { return c_; }
    Complex coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Complex(0.0); }
    Complex leading() const { return c_.back(); }

    // Largest coefficient modulus; scale reference for residual tests.
    double coeff_scale() const {
        double m = 0.0;
        for (Complex a : c_) m = std::max(m, std::abs(a));
        return m;
    }

    Complex operator()(Complex z) const {
        Complex acc = c_.back();
        for (std::size_t k = c_.size() - 1; k > 0; --k) acc = acc * z + c_[k - 1];
        return acc;
    }

    // Horner evaluation together with Sum |c_k||z|^k, the natural error scale.
    std::pair<Complex, double> eval_with_scale(Complex z) const {
        Complex acc = c_.back();
        double scale = std::abs(c_.back());
        const double az = std::abs(z);
        for (std::size_t k = c_.size() - 1; k > 0; --k) {
            acc = acc * z + c_[k - 1];
            scale = scale * az + std::abs(c_[k - 1]);
        }
        return {acc, scale};
    }

    Polynomial derivative() const {
        if (c_.size() == 1) return Polynomial{};
        std::vector<Complex> d(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * double(k);
        return Polynomial(std::move(d));
    }

    // Coefficients reversed after zero-padding to degree `pad_to`:
    // the result r satisfies r(w) = w^pad_to * p(1/w).
    Polynomial reversed(int pad_to) const {
        std::vector<Complex> r(static_cast<std::size_t>(pad_to) + 1, Complex(0.0));
        for (std::size_t k = 0; k < c_.size(); ++k)
            r[static_cast<std::size_t>(pad_to) - k] = c_[k];
        return Polynomial(std::move(r));
    }

    Polynomial operator+(const Polynomial& o) const {
        std::vector<Complex> r(std::max(c_.size(), o.c_.size()), Complex(0.0));
        for (std::size_t k = 0; k < r.size(); ++k) r[k] = coeff(k) + o.coeff(k);
        return Polynomial(std::move(r));
    }

    Polynomial operator-(const Polynomial& o) const {
        std::vector<Complex> r(std::max(c_.size(), o.c_.size()), Complex(0.0));
        for (std::size_t k = 0; k < r.size(); ++k) r[k] = coeff(k) - o.coeff(k);
        return Polynomial(std::move(r));
    }

    Polynomial operator*(const Polynomial& o) const {
        if (is_zero() || o.is_zero()) return Polynomial{};
        std::vector<Complex> r(c_.size() + o.c_.size() - 1, Complex(0.0));
        for (std::size_t i = 0; i < c_.size(); ++i)
            for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
        return Polynomial(std::move(r));
    }

    Polynomial operator*(Complex s) const {
        std::vector<Complex> r = c_;
        for (Complex& a : r) a *= s;
        return Polynomial(std::move(r));
    }

    // Drop leading coefficients whose modulus is below rel_tol * max |c_k|;
    // used to strip cancellation dust off derived numerators.
    Polynomial trimmed_leading(double rel_tol) const {
        const double cut = rel_tol * coeff_scale();
        std::size_t n = c_.size();
        while (n > 1 && std::abs(c_[n - 1]) <= cut) --n;
        return Polynomial(std::vector<Complex>(c_.begin(), c_.begin() + n));
    }

    bool operator==(const Polynomial& o) const { return c_ == o.c_; }

private:
    void trim() {
        if (c_.empty()) c_.push_back(0.0);
        while (c_.size() > 1 && c_.back() == 0.0) c_.pop_back();
    }

    std::vector<Complex> c_;
};

} // namespace carpet
