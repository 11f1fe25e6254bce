#include "annulus/abelian.hpp"

#include <algorithm>

namespace annulus {

template <class F>
typename F::P assemble_abelian_t(ReductionTableT<F>& table, const Perturbation& pert) {
    using P = typename F::P;
    if (table.level() < pert.n)
        throw MissingDependency("table level below the perturbation degree");

    P out;
    for (const auto& [idx, c] : pert.b) {
        if (idx.j == 0) continue; // I_{i,0} = 0
        out += table.reduce(idx.i, idx.j).scaled(table.field().of(F::from_ratio(c)));
    }
    for (const auto& [idx, c] : pert.a) {
        if (idx.i == 0) continue; // oint y^j dy = 0
        typename F::Numeric w =
            F::from_ratio(c) * F::num(idx.i) / F::num(idx.j + 1);
        out += table.reduce(idx.i - 1, idx.j + 1).scaled(table.field().of(w));
    }

    if constexpr (F::is_exact) {
        if (out.degree() > pert.n)
            throw DegreeViolation("Abelian integral degree exceeds the perturbation degree");
        if (!out.is_zero() && !scalar_is_zero(out.constant_term()))
            throw DegreeViolation("Abelian integral has a nonzero constant term");
    }
    return out;
}

HPoly assemble_abelian(ReductionTable& table, const Perturbation& pert) {
    if (table.field().lambda != pert.lambda)
        throw MathError("perturbation lambda does not match the table");
    return assemble_abelian_t(table, pert);
}

DPoly assemble_abelian(FloatReductionTable& table, const Perturbation& pert) {
    return assemble_abelian_t(table, pert);
}

HPoly assemble_abelian(const Perturbation& pert) {
    ReductionTable table(ExactField(pert.lambda), std::max(3, pert.n));
    return assemble_abelian(table, pert);
}

std::map<MonomialIndex, Rational> xi_coefficients(const Perturbation& pert) {
    std::map<MonomialIndex, Rational> xi;
    auto bump = [&](int i, int j, const Rational& v) {
        if (v == 0) return;
        auto [it, fresh] = xi.emplace(MonomialIndex{i, j}, v);
        if (!fresh) it->second += v;
        if (it->second == 0) xi.erase(it);
    };
    for (const auto& [idx, c] : pert.b)
        if (idx.j >= 1) bump(idx.i, idx.j, c);
    for (const auto& [idx, c] : pert.a)
        if (idx.i >= 1) bump(idx.i - 1, idx.j + 1, c * Rational(idx.i) / Rational(idx.j + 1));
    return xi;
}

// Coefficient formulas printed for the small cases, rewritten in the s basis:
// each alpha_k is pi*s times a rational function of lambda.
std::array<SurdScalar, 4> abelian_coefficients_n4(const Rational& lambda,
                                                  const Perturbation& pert) {
    if (pert.n > 4) throw MathError("printed coefficient formulas cover n <= 4 only");
    Rational om = 1 - lambda;
    Rational om2 = om * om, om3 = om2 * om, om4 = om3 * om;
    Rational L2 = lambda * lambda, L3 = L2 * lambda;

    auto xi = xi_coefficients(pert);
    auto get = [&](int i, int j) {
        auto it = xi.find(MonomialIndex{i, j});
        return it == xi.end() ? Rational(0) : it->second;
    };

    std::array<Rational, 5> alpha{}; // 1-based
    alpha[1] += Rational(-2) / om * get(0, 1);

    alpha[2] += 2 * lambda / om2 * (get(0, 2) + get(1, 2));
    alpha[2] += -3 * lambda / om2 * get(0, 3);
    alpha[2] += Rational(-1) / om2 * get(2, 1);

    alpha[3] += -3 * L2 / om3 * get(0, 3);
    alpha[3] += 4 * L2 * (2 * lambda + 1) / om3 * get(0, 4);
    alpha[3] += -6 * L2 / om3 * get(1, 3);
    alpha[3] += 2 * lambda / om3 * get(2, 2);

    alpha[4] += 5 * L3 / om4 * get(0, 4);

    Rational s_sq = lambda * om;
    std::array<SurdScalar, 4> out;
    for (int k = 1; k <= 4; ++k)
        out[k - 1] = SurdScalar::from_surd(alpha[k], s_sq, 1);
    return out;
}

ExactMatrix prop_jacobian_pi_stripped(ReductionTable& table, int n) {
    if (table.level() < n) throw MissingDependency("table level below n");
    ExactMatrix m(n, n);
    Rational s_sq = table.field().s_sq;
    for (int k = 1; k <= n; ++k) {
        const HPoly& g = table.gen(0, k);
        for (int d = 1; d <= n; ++d)
            m.at(d - 1, k - 1) = SurdScalar::from_surd(g.coeff(d).surd_part(), s_sq, 0);
    }
    return m;
}

namespace {

// greedy exact rank-increase test for the fallback pivot selection
bool increases_rank(std::vector<std::vector<Rational>>& basis, const std::vector<Rational>& col) {
    std::vector<Rational> v = col;
    for (const auto& row : basis) {
        // row is normalized with a leading 1 at row_pivot
        size_t p = 0;
        while (p < row.size() && row[p] == 0) ++p;
        if (p < v.size() && v[p] != 0) {
            Rational f = v[p];
            for (size_t k = 0; k < v.size(); ++k) v[k] -= f * row[k];
        }
    }
    size_t p = 0;
    while (p < v.size() && v[p] == 0) ++p;
    if (p == v.size()) return false;
    Rational lead = v[p];
    for (auto& x : v) x /= lead;
    basis.push_back(std::move(v));
    return true;
}

} // namespace

SynthesisResult synthesize(const std::vector<Rational>& target_zeros, const Rational& lambda) {
    if (target_zeros.empty()) throw MathError("need at least one target zero");
    std::vector<Rational> zeros = target_zeros;
    for (Rational& z : zeros) z.canonicalize();
    for (size_t i = 0; i < zeros.size(); ++i) {
        if (!(zeros[i] > 0)) throw MathError("target zeros must be positive");
        for (size_t j = i + 1; j < zeros.size(); ++j)
            if (zeros[i] == zeros[j]) throw MathError("target zeros must be distinct");
    }

    const int n = static_cast<int>(zeros.size()) + 1;
    ReductionTable table(ExactField(lambda), std::max(3, n));

    // target polynomial h * prod (h - z), monic; coefficients of h^1..h^n
    std::vector<Rational> target = {Rational(1)};
    for (const Rational& z : zeros) {
        std::vector<Rational> next(target.size() + 1, Rational(0));
        for (size_t k = 0; k < target.size(); ++k) {
            next[k + 1] += target[k];
            next[k] -= z * target[k];
        }
        target = std::move(next);
    }

    auto column_of = [&](const MonomialIndex& gk) {
        std::vector<Rational> col(n);
        const HPoly& g = table.gen(gk.i, gk.j);
        for (int d = 1; d <= n; ++d) col[d - 1] = g.coeff(d).surd_part();
        return col;
    };

    std::vector<MonomialIndex> pivots;
    for (int k = 1; k <= n; ++k) pivots.push_back(MonomialIndex{0, k});

    auto solve_with = [&](const std::vector<MonomialIndex>& cols) {
        ExactMatrix m(n, n);
        for (int c = 0; c < n; ++c) {
            auto col = column_of(cols[c]);
            for (int d = 0; d < n; ++d) m.at(d, c) = SurdScalar::from_rational(col[d]);
        }
        std::vector<SurdScalar> rhs(n);
        for (int d = 0; d < n; ++d) rhs[d] = SurdScalar::from_rational(target[d]);
        return solve_exact(m, rhs);
    };

    std::vector<SurdScalar> xi;
    try {
        xi = solve_with(pivots);
    } catch (const SingularMatrix&) {
        // pull in the xi_{1,k} columns and keep any independent set of n
        std::vector<MonomialIndex> candidates = pivots;
        for (int k = 2; k <= n; ++k) candidates.push_back(MonomialIndex{1, k});
        std::vector<std::vector<Rational>> basis;
        std::vector<MonomialIndex> chosen;
        for (const auto& cand : candidates) {
            if (static_cast<int>(chosen.size()) == n) break;
            if (increases_rank(basis, column_of(cand))) chosen.push_back(cand);
        }
        if (static_cast<int>(chosen.size()) != n)
            throw SingularPivot("no independent pivot set among xi_{0,k}, xi_{1,k}");
        pivots = chosen;
        xi = solve_with(pivots);
    }

    SynthesisResult result;
    result.pivots = pivots;
    result.pert.n = n;
    result.pert.lambda = lambda;
    for (int c = 0; c < n; ++c) {
        if (!xi[c].is_rational()) throw AlgebraError("synthesis weights must be rational");
        if (xi[c].is_zero()) continue;
        result.pert.set_b(pivots[c].i, pivots[c].j, xi[c].rat_part());
    }

    // postcondition: the assembled integral is exactly pi*s*(target)
    HPoly assembled = assemble_abelian(table, result.pert);
    std::vector<SurdScalar> want(n + 1);
    for (int d = 1; d <= n; ++d)
        want[d] = SurdScalar::from_surd(target[d - 1], table.field().s_sq, 1);
    if (assembled != HPoly(std::move(want)))
        throw AlgebraError("synthesized perturbation failed verification");
    return result;
}

NormalizedSystem normalize_cmv(const CMVParameters& k) {
    if (k.k1 == 0 || k.k2 == 0 || k.k3 == 0 || k.k4 == 0)
        throw MathError("normalization requires k1, k2, k3, k4 all nonzero");
    NormalizedSystem out;
    Rational denom = k.k1 * k.k1 + k.k3 * k.k3;
    out.lambda = k.k3 * k.k3 / denom;
    out.time_scale = 2 * k.k2 * k.k3;
    out.x_scale = k.k4 / k.k3;
    out.y_scale = k.k2 * k.k4 / denom;
    return out;
}

template typename ExactField::P assemble_abelian_t<ExactField>(ReductionTableT<ExactField>&,
                                                               const Perturbation&);
template typename FloatField::P assemble_abelian_t<FloatField>(ReductionTableT<FloatField>&,
                                                               const Perturbation&);

} // namespace annulus
