#ifndef ANNULUS_POLY_HPP
#define ANNULUS_POLY_HPP

#include <vector>

#include "annulus/surd.hpp"

namespace annulus {

// Univariate polynomial in the energy h, dense ascending coefficients,
// trailing zeros trimmed. The zero polynomial has an empty coefficient list.
template <class S>
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<S> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly monomial(S coeff, int power) {
        if (scalar_is_zero(coeff)) return Poly();
        std::vector<S> c(power + 1);
        c[power] = std::move(coeff);
        return Poly(std::move(c));
    }

    static Poly constant(S value) { return monomial(std::move(value), 0); }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    S coeff(int k) const {
        if (k < 0 || k >= static_cast<int>(c_.size())) return S();
        return c_[k];
    }

    const S& lead() const { return c_.back(); }
    const std::vector<S>& coeffs() const { return c_; }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<S> c(std::max(a.c_.size(), b.c_.size()));
        for (size_t k = 0; k < c.size(); ++k) {
            if (k < a.c_.size() && k < b.c_.size()) c[k] = a.c_[k] + b.c_[k];
            else if (k < a.c_.size()) c[k] = a.c_[k];
            else c[k] = b.c_[k];
        }
        return Poly(std::move(c));
    }

    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

    Poly operator-() const {
        Poly p = *this;
        for (S& x : p.c_) x = -x;
        return p;
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<S> c(a.c_.size() + b.c_.size() - 1);
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j)
                c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
        return Poly(std::move(c));
    }

    Poly& operator+=(const Poly& b) { return *this = *this + b; }
    Poly& operator-=(const Poly& b) { return *this = *this - b; }

    Poly scaled(const S& factor) const {
        if (scalar_is_zero(factor)) return Poly();
        Poly p = *this;
        for (S& x : p.c_) x = x * factor;
        p.trim();
        return p;
    }

    // multiply by h^k
    Poly shifted(int k) const {
        if (is_zero()) return Poly();
        std::vector<S> c(c_.size() + k);
        for (size_t i = 0; i < c_.size(); ++i) c[i + k] = c_[i];
        return Poly(std::move(c));
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<S> c(c_.size() - 1);
        for (size_t k = 1; k < c_.size(); ++k) c[k - 1] = c_[k] * int_scalar(static_cast<long>(k));
        return Poly(std::move(c));
    }

    // antiderivative with integration constant 0
    Poly antiderivative() const {
        if (is_zero()) return Poly();
        std::vector<S> c(c_.size() + 1);
        for (size_t k = 0; k < c_.size(); ++k) c[k + 1] = c_[k] / int_scalar(static_cast<long>(k) + 1);
        return Poly(std::move(c));
    }

    S constant_term() const { return coeff(0); }

    double eval(double h) const {
        double v = 0.0;
        for (size_t k = c_.size(); k-- > 0;) v = v * h + scalar_to_double(c_[k]);
        return v;
    }

    // exact evaluation at a scalar point
    S eval_at(const S& h) const {
        S v;
        for (size_t k = c_.size(); k-- > 0;) v = v * h + c_[k];
        return v;
    }

    friend bool operator==(const Poly& a, const Poly& b) { return (a - b).is_zero(); }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

private:
    static S int_scalar(long n);

    void trim() {
        while (!c_.empty() && scalar_is_zero(c_.back())) c_.pop_back();
    }

    std::vector<S> c_;
};

template <>
inline SurdScalar Poly<SurdScalar>::int_scalar(long n) {
    return SurdScalar::from_rational(rat(n));
}

template <>
inline double Poly<double>::int_scalar(long n) {
    return static_cast<double>(n);
}

using HPoly = Poly<SurdScalar>;
using DPoly = Poly<double>;

} // namespace annulus

#endif
