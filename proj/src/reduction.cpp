#include "annulus/reduction.hpp"

#include <cassert>
#include <string>

namespace annulus {

namespace {

Rational double_factorial(int n) {
    Rational r(1);
    for (int k = n; k >= 2; k -= 2) r *= k;
    return r;
}

} // namespace

// I_{2m,1}(h) = -2^{m+2} * pi*s * (2m-1)!!/(2m+2)!! * (1-lambda)^{-(m+1)} * h^{m+1}
template <class F>
typename F::P moment_integral_t(const F& field, int n_even) {
    using N = typename F::Numeric;
    if (n_even < 0 || n_even % 2 != 0) throw MathError("moment index must be even and >= 0");
    int m = n_even / 2;

    N one_minus = F::num(1) - field.lambda;
    N denom_pow = F::num(1);
    for (int k = 0; k <= m; ++k) denom_pow = denom_pow * one_minus;

    N wallis = F::from_ratio(double_factorial(2 * m - 1) / double_factorial(2 * m + 2));
    N scale = F::num(-(1L << (m + 2))) * wallis / denom_pow;
    return F::P::monomial(field.surd(scale, 1), m + 1);
}

template <class F>
ReductionTableT<F>::ReductionTableT(F field, int level) : field_(std::move(field)) {
    if (level < 3) throw MathError("table level must be at least 3");
    seed_base_integrals();
    while (level_ < level) extend_level();
}

// Closed forms of the generators through level 3, in the s = sqrt(lambda(1-lambda))
// basis:
//   I_{0,1} = -2 pi s/(1-L) h            I_{1,1} = 0
//   I_{0,2} = I_{1,2} = 2 pi s L/(1-L)^2 h^2
//   I_{0,3} = -3 pi s L/(1-L)^3 (L h^3 + (1-L) h^2)
//   I_{1,3} = -6 pi s L^2/(1-L)^3 h^3
template <class F>
void ReductionTableT<F>::seed_base_integrals() {
    const N lam = field_.lambda;
    const N one = F::num(1);
    const N om = one - lam;
    const N om2 = om * om;
    const N om3 = om2 * om;

    gen0_.assign(4, P());
    gen1_.assign(4, P());

    gen0_[1] = P::monomial(field_.surd(F::num(-2) / om, 1), 1);
    gen1_[1] = P();

    gen0_[2] = P::monomial(field_.surd(F::num(2) * lam / om2, 1), 2);
    gen1_[2] = gen0_[2];

    {
        std::vector<S> c(4);
        c[2] = field_.surd(F::num(-3) * lam / om2, 1);
        c[3] = field_.surd(F::num(-3) * lam * lam / om3, 1);
        gen0_[3] = P(std::move(c));
    }
    gen1_[3] = P::monomial(field_.surd(F::num(-6) * lam * lam / om3, 1), 3);

    level_ = 3;
    for (int k = 1; k <= 3; ++k) {
        validate_generator(0, k, gen0_[k]);
        validate_generator(1, k, gen1_[k]);
    }

    // the low entries every caller touches
    reduce(2, 1);
    reduce(2, 2);
    reduce(3, 2);
}

template <class F>
const typename ReductionTableT<F>::P& ReductionTableT<F>::gen(int g, int k) const {
    if (!known(g, k)) throw MissingDependency("generator I_{" + std::to_string(g) + "," +
                                              std::to_string(k) + "} not built");
    return g == 0 ? gen0_[k] : gen1_[k];
}

// Second-index ladder for I_{2,k}. Seed: I_{2,1} = -1/(2 lambda) I_{0,2}.
// The step expresses I_{2,n+1} through I_{2,n}, h I_{0,n}, I_{0,n+1}, I_{0,n+2},
// I_{1,n} (coefficient linear in h) and I_{1,n+1}.
template <class F>
const GenExpr<F>& ReductionTableT<F>::x2_expr(int k) {
    auto it = x2_.find(k);
    if (it != x2_.end()) return it->second;
    if (k < 1) throw MathError("x2 ladder index must be >= 1");

    const N lam = field_.lambda;
    GenExpr<F> e;
    if (k == 1) {
        e.add(0, 2, cpoly(F::num(-1) / (F::num(2) * lam)));
    } else {
        const int n = k - 1;
        const GenExpr<F>& prev = x2_expr(n);

        N den = F::num(2 * (n + 3) * (2 * n + 5));
        N a = F::num(n + 1) * (lam * F::num(9 * n + 24) - F::num(8 * n + 21)) / den;
        N b = F::num(2 * (n + 1)) / F::num((n + 3) * (2 * n + 5));
        N c = F::num(n) * (lam * F::num(3 * n + 8) - F::num(2 * n + 5)) / (lam * den);
        N d = F::num(-(n + 1)) / (lam * F::num(n + 2));
        N e1 = F::num(-(n + 1)) * F::num(16 * n + 40) / den;
        N e0 = F::num(n + 1) * (lam * F::num(3 * n + 8) - F::num(2 * n + 5)) / (lam * den);
        N g = (lam * F::num(n) - F::num(2 * n + 3)) / (lam * F::num(n + 3));

        e.add_scaled(prev, cpoly(a));
        e.add(0, n, lpoly(b, F::num(0)));
        e.add(0, n + 1, cpoly(c));
        e.add(0, n + 2, cpoly(d));
        e.add(1, n, lpoly(e1, e0));
        e.add(1, n + 1, cpoly(g));
    }
    return x2_.emplace(k, std::move(e)).first->second;
}

// First-index reduction for i >= 3: expresses I_{i,j} through entries with
// smaller first index (second indices j and j+1 appear on the right).
template <class F>
GenExpr<F> ReductionTableT<F>::build_expr(int i, int j) {
    assert(i >= 3 && j >= 1);
    const N lam = field_.lambda;
    const N pref = F::num(1) / (lam * F::num(i + 2 * j + 1));

    auto term = [&](int ii, int jj) -> const GenExpr<F>& {
        static const GenExpr<F> empty;
        if (jj == 0) return empty; // I_{n,0} = 0
        if (ii <= 1) {
            typename GenExpr<F>::Key key{ii, jj};
            auto it = expr_cache_.find(key);
            if (it == expr_cache_.end()) {
                GenExpr<F> g;
                g.add(ii, jj, cpoly(F::num(1)));
                it = expr_cache_.emplace(key, std::move(g)).first;
            }
            return it->second;
        }
        return generator_expression(ii, jj);
    };

    GenExpr<F> out;
    if (i >= 4) out.add_scaled(term(i - 4, j), lpoly(pref * F::num(2 * (i - 3)), F::num(0)));
    out.add_scaled(term(i - 2, j), cpoly(pref * F::num(-(i + j - 1))));
    out.add_scaled(term(i - 1, j), cpoly(pref * (-lam) * F::num(2 * i + 3 * j)));
    out.add_scaled(term(i - 2, j + 1), cpoly(pref * F::num(-j * (i + 2 * j + 1)) / F::num(j + 1)));
    out.add_scaled(term(i - 3, j + 1), cpoly(pref * F::num(-j * (i + j - 1)) / F::num(j + 1)));
    return out;
}

template <class F>
const GenExpr<F>& ReductionTableT<F>::generator_expression(int i, int j) {
    if (i == 2) return x2_expr(j);
    if (i < 2 || j < 1) throw MathError("generator expressions exist for i >= 2, j >= 1");
    typename GenExpr<F>::Key key{i, j};
    auto it = expr_cache_.find(key);
    if (it != expr_cache_.end()) return it->second;
    GenExpr<F> e = build_expr(i, j);
    return expr_cache_.emplace(key, std::move(e)).first->second;
}

template <class F>
typename ReductionTableT<F>::P ReductionTableT<F>::evaluate(const GenExpr<F>& e) const {
    P out;
    for (const auto& [key, coeff] : e.terms) {
        if (!known(key.first, key.second))
            throw MissingDependency("expression references an unbuilt generator");
        out += coeff * (key.first == 0 ? gen0_[key.second] : gen1_[key.second]);
    }
    return out;
}

template <class F>
void ReductionTableT<F>::accumulate_derivative(const GenExpr<F>& e, const S& factor,
                                               DerivParts& out) const {
    for (const auto& [key, coeff] : e.terms) {
        P scaled = coeff.scaled(factor);
        if (known(key.first, key.second)) {
            const P& g = key.first == 0 ? gen0_[key.second] : gen1_[key.second];
            out.explicit_part += scaled.derivative() * g + scaled * g.derivative();
        } else {
            // unknown generators always enter the chain with constant weight
            for (int d = 1; d <= scaled.degree(); ++d)
                if (!field_.negligible(scaled.coeff(d), 1.0))
                    throw AlgebraError("unknown generator carries a non-constant coefficient");
            auto it = out.unknown.find(key);
            if (it == out.unknown.end()) out.unknown.emplace(key, scaled.coeff(0));
            else it->second = it->second + scaled.coeff(0);
        }
    }
}

// parts holds RHS = explicit + sum c_u * I'_u of one derivative identity whose
// LHS is the known polynomial lhs. The cancel target's coefficient must vanish
// identically; the wanted derivative is isolated and integrated with zero
// constant (the oval collapses to the center as h -> 0).
template <class F>
typename ReductionTableT<F>::P ReductionTableT<F>::solve_for_unknown(DerivParts parts,
                                                                     const P& lhs, int want_g,
                                                                     int want_k, int cancel_g,
                                                                     int cancel_k) const {
    double scale = 1.0;
    for (const auto& [key, c] : parts.unknown) scale += std::fabs(scalar_to_double(c));

    typename GenExpr<F>::Key want{want_g, want_k}, cancel{cancel_g, cancel_k};
    S want_coeff{};
    for (const auto& [key, c] : parts.unknown) {
        if (key == want) {
            want_coeff = c;
        } else if (key == cancel) {
            if (!field_.negligible(c, scale))
                throw AlgebraError("expected cancellation of a generator derivative failed");
        } else if (!field_.negligible(c, scale)) {
            throw AlgebraError("stray unknown generator in derivative identity");
        }
    }
    if (!field_.nonzero(want_coeff, scale))
        throw AlgebraError("derivative identity does not determine the target generator");

    P numerator = lhs - parts.explicit_part;
    return numerator.scaled(field_.of(F::num(1)) / want_coeff).antiderivative();
}

template <class F>
void ReductionTableT<F>::validate_generator(int g, int k, const P& p) {
    if constexpr (!F::is_exact) return;
    if (k >= 2 || (g == 0 && k == 1)) {
        if (p.degree() != k || !scalar_is_zero(p.constant_term()))
            throw DegreeViolation("generator I_{" + std::to_string(g) + "," + std::to_string(k) +
                                  "} violates the h * (degree k-1) shape");
    }
    if constexpr (F::is_exact) {
        for (int d = 0; d <= p.degree(); ++d) {
            const SurdScalar& c = p.coeff(d);
            if (!c.is_zero() && (c.rat_part() != 0 || c.pi_power() != 1)) grade_pure_ = false;
        }
    }
}

// One induction step. With generators known through level n:
//  - I_{0,n+1} comes from the energy-derivative identity at (0,n),
//      I_{0,n} = (1/(2n+1)) [4h I'_{0,n} - I'_{2,n} - L I'_{3,n} - (n/(n+1)) I'_{1,n+1}],
//    where I'_{1,n+1} cancels once I_{2,n} and I_{3,n} are expanded in
//    generators and I'_{0,n+1} survives with a constant nonzero weight;
//  - I_{1,n+1} comes from the level-set identity at (0,n),
//      I_{0,n} = (1/(L(n+2))) I'_{0,n+2} + (1/(n+1)) I'_{1,n+1} + (1/(n+1)) I'_{2,n+1},
//    where I'_{0,n+2} cancels.
template <class F>
void ReductionTableT<F>::extend_level() {
    const int n = level_;
    const N lam = field_.lambda;

    // --- I_{0,n+1} ---
    {
        const GenExpr<F>& ge2 = x2_expr(n);
        const GenExpr<F>& ge3 = generator_expression(3, n);
        const N kappa = F::num(1) / F::num(2 * n + 1);

        DerivParts parts;
        parts.explicit_part +=
            gen0_[n].derivative().shifted(1).scaled(field_.of(kappa * F::num(4)));
        accumulate_derivative(ge2, field_.of(-kappa), parts);
        accumulate_derivative(ge3, field_.of(-kappa * lam), parts);
        {
            GenExpr<F> next;
            next.add(1, n + 1, cpoly(F::num(1)));
            accumulate_derivative(next, field_.of(-kappa * F::num(n) / F::num(n + 1)), parts);
        }

        P g0next = solve_for_unknown(std::move(parts), gen0_[n], 0, n + 1, 1, n + 1);
        gen0_.push_back(std::move(g0next)); // (0,n+1) is known from here on
    }

    // --- I_{1,n+1} ---
    {
        const GenExpr<F>& ge2next = x2_expr(n + 1);
        DerivParts parts;
        accumulate_derivative(ge2next, field_.of(F::num(1) / F::num(n + 1)), parts);
        {
            GenExpr<F> far;
            far.add(0, n + 2, cpoly(F::num(1)));
            accumulate_derivative(far, field_.of(F::num(1) / (lam * F::num(n + 2))), parts);
        }
        {
            GenExpr<F> self;
            self.add(1, n + 1, cpoly(F::num(1)));
            accumulate_derivative(self, field_.of(F::num(1) / F::num(n + 1)), parts);
        }
        P g1next = solve_for_unknown(std::move(parts), gen0_[n], 1, n + 1, 0, n + 2);
        gen1_.push_back(std::move(g1next));
    }

    ++level_;
    validate_generator(0, n + 1, gen0_[n + 1]);
    validate_generator(1, n + 1, gen1_[n + 1]);
    check_consistency_identities();
}

// Redundant identities that must hold on the freshly extended table; they
// exercise the x3/x4 chains and guard the recurrence algebra.
template <class F>
void ReductionTableT<F>::check_consistency_identities() {
    const int n = level_ - 1;
    const N lam = field_.lambda;
    if (n < 3) return;

    auto check = [&](const P& got, const P& expect, const char* what) {
        P diff = got - expect;
        if constexpr (F::is_exact) {
            if (!diff.is_zero())
                throw AlgebraError(std::string(what) + " consistency identity failed at level " +
                                   std::to_string(level_));
        } else {
            double ref = 1.0 + std::fabs(expect.eval(1.0)) + std::fabs(expect.eval(0.37));
            if (std::fabs(diff.eval(1.0)) + std::fabs(diff.eval(0.37)) > 1e-6 * ref)
                throw AlgebraError(std::string(what) + " consistency identity failed (float)");
        }
    };

    // level-set identity at (0, n-1)
    {
        P rhs = gen0_[n + 1].derivative().scaled(field_.of(F::num(1) / (lam * F::num(n + 1))));
        rhs += gen1_[n].derivative().scaled(field_.of(F::num(1) / F::num(n)));
        rhs += evaluate(x2_expr(n)).derivative().scaled(field_.of(F::num(1) / F::num(n)));
        check(rhs, gen0_[n - 1], "level-set");
    }

    // energy-derivative identity at (1, n-1)
    {
        P i3 = evaluate(generator_expression(3, n - 1));
        P i4 = evaluate(generator_expression(4, n - 1));
        P rhs = gen1_[n - 1].derivative().shifted(1).scaled(field_.of(F::num(4)));
        rhs -= i3.derivative();
        rhs -= i4.derivative().scaled(field_.of(lam));
        rhs -= evaluate(x2_expr(n)).derivative().scaled(field_.of(F::num(n - 1) / F::num(n)));
        rhs = rhs.scaled(field_.of(F::num(1) / F::num(2 * n)));
        check(rhs, gen1_[n - 1], "energy-derivative");
    }
}

template <class F>
const typename ReductionTableT<F>::P& ReductionTableT<F>::reduce(int i, int j) {
    if (i < 0 || j < 0) throw MathError("negative monomial index");
    MonomialIndex idx{i, j};
    auto it = entries_.find(idx);
    if (it != entries_.end()) return it->second;

    P value;
    if (j == 0) {
        value = P(); // closed one-form: I_{i,0} = 0
    } else {
        int needed = i <= 1 ? j : j + i / 2;
        if (needed > level_)
            throw LevelExceeded("index (" + std::to_string(i) + "," + std::to_string(j) +
                                ") needs generator level " + std::to_string(needed) +
                                " but table is at " + std::to_string(level_));
        if (i <= 1) {
            value = gen(i, j);
        } else {
            value = evaluate(generator_expression(i, j));
            if constexpr (F::is_exact) {
                if (!value.is_zero() && !scalar_is_zero(value.constant_term()))
                    throw DegreeViolation("reduced integral has a nonzero constant term");
            }
        }
    }
    return entries_.emplace(idx, std::move(value)).first->second;
}

ReductionTable base_integrals(const Rational& lambda) {
    return ReductionTable(ExactField(lambda), 3);
}

FloatReductionTable base_integrals_float(double lambda) {
    return FloatReductionTable(FloatField(lambda), 3);
}

HPoly moment_integral(int n_even, const Rational& lambda) {
    return moment_integral_t(ExactField(lambda), n_even);
}

template class ReductionTableT<ExactField>;
template class ReductionTableT<FloatField>;
template typename ExactField::P moment_integral_t<ExactField>(const ExactField&, int);
template typename FloatField::P moment_integral_t<FloatField>(const FloatField&, int);

} // namespace annulus
