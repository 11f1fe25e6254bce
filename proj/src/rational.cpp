#include "annulus/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace annulus {

Rational parse_rational(const std::string& text) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw MathError("empty rational literal");

    auto dot = t.find('.');
    if (dot != std::string::npos) {
        // decimal literal: shift the point out
        std::string digits = t.substr(0, dot) + t.substr(dot + 1);
        size_t frac_len = t.size() - dot - 1;
        if (digits.empty() || digits == "-" || digits == "+")
            throw MathError("bad rational literal: " + text);
        mpz_class num(digits, 10);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
        Rational r(num, den);
        r.canonicalize();
        return r;
    }

    Rational r;
    if (mpq_set_str(r.get_mpq_t(), t.c_str(), 10) != 0)
        throw MathError("bad rational literal: " + text);
    if (r.get_den() == 0) throw DivideByZero();
    if (sgn(r.get_den()) < 0) {
        r.get_num() = -r.get_num();
        r.get_den() = -r.get_den();
    }
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

bool rational_sqrt(const Rational& r, Rational& root) {
    if (sgn(r) < 0) return false;
    const mpz_class& num = r.get_num();
    const mpz_class& den = r.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return false;
    mpz_class num_root, den_root;
    mpz_sqrt(num_root.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(den_root.get_mpz_t(), den.get_mpz_t());
    root = Rational(num_root, den_root);
    root.canonicalize();
    return true;
}

} // namespace annulus
