#ifndef ANNULUS_REDUCTION_HPP
#define ANNULUS_REDUCTION_HPP

#include <map>
#include <utility>
#include <vector>

#include "annulus/field.hpp"

namespace annulus {

struct MonomialIndex {
    int i = 0;
    int j = 0;
    friend bool operator<(const MonomialIndex& a, const MonomialIndex& b) {
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    }
    friend bool operator==(const MonomialIndex& a, const MonomialIndex& b) {
        return a.i == b.i && a.j == b.j;
    }
};

// Closed form of the even moment I_{2m,1}(h) along the oval: a single monomial
// of degree m+1 with a pi*s-graded coefficient, obtained from the Wallis
// reduction of the defining integral.
template <class F>
typename F::P moment_integral_t(const F& field, int n_even);

// Linear combination of the generator integrals I_{0,k}, I_{1,k} with
// polynomial-in-h coefficients. This is the normal form every I_{i,j} is
// reduced to before the generators themselves are substituted.
template <class F>
class GenExpr {
public:
    using S = typename F::Scalar;
    using P = typename F::P;
    using Key = std::pair<int, int>; // (g, k) -> I_{g,k}, g in {0,1}

    std::map<Key, P> terms;

    void add(int g, int k, const P& coeff) {
        if (coeff.is_zero()) return;
        auto key = Key{g, k};
        auto it = terms.find(key);
        if (it == terms.end()) {
            terms.emplace(key, coeff);
        } else {
            it->second += coeff;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    void add_scaled(const GenExpr& other, const P& factor) {
        for (const auto& [key, coeff] : other.terms) add(key.first, key.second, coeff * factor);
    }
};

// Table of the reduced integrals I_{i,j}(h) at a fixed lambda, complete for
// all i + j <= level. The generators I_{0,k}, I_{1,k} are stored explicitly;
// everything else reduces to them through the recurrence chain.
template <class F>
class ReductionTableT {
public:
    using S = typename F::Scalar;
    using N = typename F::Numeric;
    using P = typename F::P;

    ReductionTableT(F field, int level);

    const F& field() const { return field_; }
    int level() const { return level_; }
    bool grade_pure() const { return grade_pure_; }

    // I_{0,k} and I_{1,k}, k = 1..level
    const P& gen(int g, int k) const;

    // exact polynomial for I_{i,j}; memoized
    const P& reduce(int i, int j);
    const P& reduce(MonomialIndex idx) { return reduce(idx.i, idx.j); }

    // grows the generator set (and the admissible index range) by one level
    void extend_level();

    // generator-basis expression of I_{i,j} produced by the reduction chain;
    // exposed for the structural degree-bound checks
    const GenExpr<F>& generator_expression(int i, int j);

private:
    void seed_base_integrals();
    const GenExpr<F>& x2_expr(int k);    // I_{2,k} via the second-index ladder
    GenExpr<F> build_expr(int i, int j); // i >= 3 via first-index reduction

    // split the h-derivative of expr into an explicit part (known generators)
    // plus constant coefficients on the derivatives of unknown generators
    struct DerivParts {
        P explicit_part;
        std::map<typename GenExpr<F>::Key, S> unknown;
    };
    void accumulate_derivative(const GenExpr<F>& e, const S& factor, DerivParts& out) const;

    bool known(int g, int k) const {
        if (k < 1) return false;
        if (g == 0) return k < static_cast<int>(gen0_.size());
        if (g == 1) return k < static_cast<int>(gen1_.size());
        return false;
    }

    P evaluate(const GenExpr<F>& e) const;
    P solve_for_unknown(DerivParts parts, const P& lhs, int want_g, int want_k, int cancel_g,
                        int cancel_k) const;
    void install_generator(int g, int k, const P& deriv);
    void check_consistency_identities();
    void validate_generator(int g, int k, const P& p);

    P cpoly(const N& v, int pi_pow = 0) const {
        return P::constant(field_.of(v, pi_pow));
    }
    // a*h + b
    P lpoly(const N& a, const N& b) const {
        return P(std::vector<S>{field_.of(b), field_.of(a)});
    }

    F field_;
    int level_ = 0;
    bool grade_pure_ = true;
    std::vector<P> gen0_, gen1_; // index k, slot 0 unused
    std::map<int, GenExpr<F>> x2_;
    std::map<typename GenExpr<F>::Key, GenExpr<F>> expr_cache_;
    std::map<MonomialIndex, P> entries_;
};

using ReductionTable = ReductionTableT<ExactField>;
using FloatReductionTable = ReductionTableT<FloatField>;

// Table seeded with the closed-form integrals through level 3.
ReductionTable base_integrals(const Rational& lambda);
FloatReductionTable base_integrals_float(double lambda);

HPoly moment_integral(int n_even, const Rational& lambda);

extern template class ReductionTableT<ExactField>;
extern template class ReductionTableT<FloatField>;
extern template typename ExactField::P moment_integral_t<ExactField>(const ExactField&, int);
extern template typename FloatField::P moment_integral_t<FloatField>(const FloatField&, int);

} // namespace annulus

#endif
