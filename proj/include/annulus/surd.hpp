#ifndef ANNULUS_SURD_HPP
#define ANNULUS_SURD_HPP

#include <cmath>
#include <string>

#include "annulus/rational.hpp"

namespace annulus {

// Element (rat + surd*s) * pi^pi_pow where s = +sqrt(s_sq) and s_sq = lambda*(1-lambda)
// for the fixed rational lambda of the enclosing computation.
//
// s_sq is carried only by values with a nonzero surd part; pure rationals are
// context-free, which lets generic polynomial code manipulate them without a
// field handle. Mixing values from different lambda contexts throws.
//
// When s_sq happens to be a rational square, s collapses to a rational and
// equality/zero tests substitute that value; otherwise (1, s) is a Q-basis and
// the tests are componentwise.
class SurdScalar {
public:
    SurdScalar() = default;

    static SurdScalar from_rational(Rational r, int pi_pow = 0) {
        SurdScalar x;
        x.rat_ = std::move(r);
        x.pi_pow_ = x.rat_ == 0 ? 0 : pi_pow;
        return x;
    }

    static SurdScalar from_surd(Rational coeff, Rational s_sq, int pi_pow = 0) {
        SurdScalar x;
        x.surd_ = std::move(coeff);
        x.pi_pow_ = pi_pow;
        x.s_sq_ = std::move(s_sq);
        x.normalize();
        return x;
    }

    static SurdScalar make(Rational rat, Rational surd, Rational s_sq, int pi_pow = 0) {
        SurdScalar x;
        x.rat_ = std::move(rat);
        x.surd_ = std::move(surd);
        x.s_sq_ = std::move(s_sq);
        x.pi_pow_ = pi_pow;
        x.normalize();
        return x;
    }

    const Rational& rat_part() const { return rat_; }
    const Rational& surd_part() const { return surd_; }
    int pi_power() const { return pi_pow_; }
    const Rational& s_squared() const { return s_sq_; }

    bool is_zero() const {
        if (surd_ == 0) return rat_ == 0;
        Rational root;
        if (rational_sqrt(s_sq_, root)) return rat_ + surd_ * root == 0;
        return false;
    }

    bool is_rational() const { return surd_ == 0; }

    double to_double() const {
        double v = annulus::to_double(rat_);
        if (surd_ != 0) v += annulus::to_double(surd_) * std::sqrt(annulus::to_double(s_sq_));
        for (int k = 0; k < pi_pow_; ++k) v *= M_PI;
        return v;
    }

    SurdScalar operator-() const {
        SurdScalar x = *this;
        x.rat_ = -x.rat_;
        x.surd_ = -x.surd_;
        return x;
    }

    friend SurdScalar operator+(const SurdScalar& a, const SurdScalar& b) {
        int pi = unify_grade(a, b);
        SurdScalar x;
        x.rat_ = a.rat_ + b.rat_;
        x.surd_ = a.surd_ + b.surd_;
        x.pi_pow_ = pi;
        x.s_sq_ = unify_context(a, b);
        x.normalize();
        return x;
    }

    friend SurdScalar operator-(const SurdScalar& a, const SurdScalar& b) { return a + (-b); }

    friend SurdScalar operator*(const SurdScalar& a, const SurdScalar& b) {
        if (a.is_zero() || b.is_zero()) return SurdScalar();
        int pi = a.pi_pow_ + b.pi_pow_;
        if (pi > 1) throw GradeError("pi grade overflow in multiplication");
        SurdScalar x;
        x.rat_ = a.rat_ * b.rat_;
        x.surd_ = a.rat_ * b.surd_ + a.surd_ * b.rat_;
        if (a.surd_ != 0 && b.surd_ != 0) {
            Rational s_sq = unify_context(a, b);
            x.rat_ += a.surd_ * b.surd_ * s_sq;
            x.s_sq_ = s_sq;
        } else {
            x.s_sq_ = unify_context(a, b);
        }
        x.pi_pow_ = pi;
        x.normalize();
        return x;
    }

    friend SurdScalar operator/(const SurdScalar& a, const SurdScalar& b) {
        if (b.is_zero()) throw DivideByZero();
        int pi = a.pi_pow_ - b.pi_pow_;
        if (!a.is_zero() && pi < 0) throw GradeError("pi grade underflow in division");

        SurdScalar q;
        if (b.surd_ == 0) {
            q.rat_ = a.rat_ / b.rat_;
            q.surd_ = a.surd_ / b.rat_;
            q.s_sq_ = a.s_sq_;
        } else {
            Rational s_sq = unify_context(a, b);
            Rational root;
            if (rational_sqrt(s_sq, root)) {
                // s is rational here; divide by the substituted value
                Rational v = b.rat_ + b.surd_ * root;
                q.rat_ = a.rat_ / v;
                q.surd_ = a.surd_ / v;
            } else {
                Rational denom = b.rat_ * b.rat_ - b.surd_ * b.surd_ * s_sq;
                // denom = (b.rat - b.surd*s)(b.rat + b.surd*s) != 0 since s is irrational
                q.rat_ = (a.rat_ * b.rat_ - a.surd_ * b.surd_ * s_sq) / denom;
                q.surd_ = (a.surd_ * b.rat_ - a.rat_ * b.surd_) / denom;
            }
            q.s_sq_ = s_sq;
        }
        q.pi_pow_ = a.is_zero() ? 0 : pi;
        q.normalize();
        return q;
    }

    SurdScalar& operator+=(const SurdScalar& b) { return *this = *this + b; }
    SurdScalar& operator-=(const SurdScalar& b) { return *this = *this - b; }
    SurdScalar& operator*=(const SurdScalar& b) { return *this = *this * b; }
    SurdScalar& operator/=(const SurdScalar& b) { return *this = *this / b; }

    friend SurdScalar operator*(const SurdScalar& a, const Rational& r) {
        return a * from_rational(r);
    }
    friend SurdScalar operator*(const Rational& r, const SurdScalar& a) {
        return a * from_rational(r);
    }
    friend SurdScalar operator/(const SurdScalar& a, const Rational& r) {
        return a / from_rational(r);
    }

    friend bool operator==(const SurdScalar& a, const SurdScalar& b) { return (a - b).is_zero(); }
    friend bool operator!=(const SurdScalar& a, const SurdScalar& b) { return !(a == b); }

private:
    void normalize() {
        if (is_zero()) {
            rat_ = 0;
            surd_ = 0;
            pi_pow_ = 0;
            s_sq_ = 0;
        } else if (surd_ == 0) {
            s_sq_ = 0;
        }
    }

    static int unify_grade(const SurdScalar& a, const SurdScalar& b) {
        if (a.is_zero()) return b.pi_pow_;
        if (b.is_zero()) return a.pi_pow_;
        if (a.pi_pow_ != b.pi_pow_)
            throw GradeError("adding values of different pi grade");
        return a.pi_pow_;
    }

    static Rational unify_context(const SurdScalar& a, const SurdScalar& b) {
        if (a.surd_ == 0) return b.s_sq_;
        if (b.surd_ == 0) return a.s_sq_;
        if (a.s_sq_ != b.s_sq_)
            throw MathError("mixing surd values from different lambda contexts");
        return a.s_sq_;
    }

    Rational rat_ = 0;
    Rational surd_ = 0;
    int pi_pow_ = 0;
    Rational s_sq_ = 0;
};

inline bool scalar_is_zero(const SurdScalar& x) { return x.is_zero(); }
inline bool scalar_is_zero(double x) { return x == 0.0; }
inline double scalar_to_double(const SurdScalar& x) { return x.to_double(); }
inline double scalar_to_double(double x) { return x; }

} // namespace annulus

#endif
