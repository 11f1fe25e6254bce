#include "annulus/sturm.hpp"

#include <algorithm>

namespace annulus {

namespace {

void trim(RatPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const RatPoly& p) { return static_cast<int>(p.size()) - 1; }

RatPoly monic(RatPoly p) {
    trim(p);
    if (p.empty()) return p;
    Rational lead = p.back();
    for (Rational& c : p) c /= lead;
    return p;
}

// remainder of a / b over Q
RatPoly rat_poly_rem(RatPoly a, const RatPoly& b) {
    trim(a);
    while (degree(a) >= degree(b)) {
        Rational factor = a.back() / b.back();
        int shift = degree(a) - degree(b);
        for (int k = 0; k <= degree(b); ++k) a[k + shift] -= factor * b[k];
        trim(a);
        if (a.empty()) break;
    }
    return a;
}

RatPoly rat_poly_div_exact(const RatPoly& a, const RatPoly& b) {
    RatPoly rem = a;
    trim(rem);
    RatPoly q(std::max<size_t>(1, rem.size()), Rational(0));
    while (degree(rem) >= degree(b)) {
        Rational factor = rem.back() / b.back();
        int shift = degree(rem) - degree(b);
        q[shift] = factor;
        for (int k = 0; k <= degree(b); ++k) rem[k + shift] -= factor * b[k];
        trim(rem);
        if (rem.empty()) break;
    }
    if (!rem.empty()) throw MathError("inexact polynomial division");
    trim(q);
    return q;
}

RatPoly rat_poly_gcd(RatPoly a, RatPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        RatPoly r = rat_poly_rem(a, b);
        a = std::move(b);
        b = monic(std::move(r));
    }
    return monic(std::move(a));
}

RatPoly rat_poly_sub(RatPoly a, const RatPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Rational(0));
    for (size_t k = 0; k < b.size(); ++k) a[k] -= b[k];
    trim(a);
    return a;
}

// Yun squarefree decomposition: p = prod out[k]^(k+1)
std::vector<RatPoly> squarefree_decompose(RatPoly p) {
    std::vector<RatPoly> out;
    p = monic(std::move(p));
    if (degree(p) < 1) return out;
    RatPoly dp = rat_poly_derivative(p);
    RatPoly g = rat_poly_gcd(p, dp);
    if (degree(g) == 0) {
        out.push_back(p);
        return out;
    }
    RatPoly w = rat_poly_div_exact(p, g);
    RatPoly y = rat_poly_div_exact(dp, g);
    RatPoly z = rat_poly_sub(y, rat_poly_derivative(w));
    while (degree(w) > 0) {
        RatPoly f = rat_poly_gcd(w, z);
        out.push_back(f);
        w = rat_poly_div_exact(w, f);
        y = rat_poly_div_exact(z, f);
        z = rat_poly_sub(y, rat_poly_derivative(w));
    }
    return out;
}

std::vector<RatPoly> sturm_chain(const RatPoly& p) {
    std::vector<RatPoly> chain;
    chain.push_back(p);
    RatPoly dp = rat_poly_derivative(p);
    trim(dp);
    if (!dp.empty()) chain.push_back(dp);
    while (chain.size() >= 2 && degree(chain.back()) > 0) {
        RatPoly r = rat_poly_rem(chain[chain.size() - 2], chain.back());
        if (r.empty()) break;
        for (Rational& c : r) c = -c;
        chain.push_back(std::move(r));
    }
    return chain;
}

int variations_at(const std::vector<RatPoly>& chain, const Rational& x) {
    int count = 0, prev = 0;
    for (const RatPoly& f : chain) {
        int s = sign(rat_poly_eval(f, x));
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++count;
        prev = s;
    }
    return count;
}

int roots_in(const std::vector<RatPoly>& chain, const Rational& lo, const Rational& hi) {
    return variations_at(chain, lo) - variations_at(chain, hi);
}

Rational cauchy_bound(const RatPoly& p) {
    Rational best(0);
    for (size_t k = 0; k + 1 < p.size(); ++k) {
        Rational m = abs(p[k] / p.back());
        if (m > best) best = m;
    }
    return best + 1;
}

// Isolate the roots of the squarefree poly inside (lo, hi] (which holds
// `count` of them) and refine each interval below max_width.
void isolate(const RatPoly& p, const std::vector<RatPoly>& chain, Rational lo, Rational hi,
             int count, const Rational& max_width, int multiplicity,
             std::vector<RootInterval>& out) {
    if (count == 0) return;
    if (count == 1) {
        while (hi - lo > max_width) {
            Rational mid = (lo + hi) / 2;
            if (rat_poly_eval(p, mid) == 0) {
                out.push_back({mid, mid, multiplicity});
                return;
            }
            if (roots_in(chain, lo, mid) == 1) hi = mid;
            else lo = mid;
        }
        out.push_back({lo, hi, multiplicity});
        return;
    }
    Rational mid = (lo + hi) / 2;
    if (rat_poly_eval(p, mid) == 0) {
        out.push_back({mid, mid, multiplicity});
        int total_left = roots_in(chain, lo, mid); // includes mid itself
        Rational delta = (hi - lo) / 4;
        while (roots_in(chain, mid - delta, mid) != 1) delta /= 2;
        isolate(p, chain, lo, mid - delta, total_left - 1, max_width, multiplicity, out);
        isolate(p, chain, mid, hi, count - total_left, max_width, multiplicity, out);
        return;
    }
    int left = roots_in(chain, lo, mid);
    isolate(p, chain, lo, mid, left, max_width, multiplicity, out);
    isolate(p, chain, mid, hi, count - left, max_width, multiplicity, out);
}

} // namespace

RatPoly rat_poly_derivative(const RatPoly& p) {
    RatPoly d;
    for (size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<long>(k));
    trim(d);
    return d;
}

Rational rat_poly_eval(const RatPoly& p, const Rational& x) {
    Rational v(0);
    for (size_t k = p.size(); k-- > 0;) v = v * x + p[k];
    return v;
}

RatPoly rationalize_grade(const HPoly& p) {
    if (p.is_zero()) throw MathError("cannot rationalize the zero polynomial");

    int pi_pow = -1;
    bool any_rat = false, any_surd = false;
    Rational s_sq(0);
    for (int k = 0; k <= p.degree(); ++k) {
        SurdScalar c = p.coeff(k);
        if (c.is_zero()) continue;
        if (pi_pow < 0) pi_pow = c.pi_power();
        else if (c.pi_power() != pi_pow)
            throw MixedGrade("coefficients carry different pi grades");
        if (c.rat_part() != 0) any_rat = true;
        if (c.surd_part() != 0) {
            any_surd = true;
            s_sq = c.s_squared();
        }
    }

    RatPoly out(p.degree() + 1, Rational(0));
    if (any_rat && any_surd) {
        Rational root;
        if (!rational_sqrt(s_sq, root))
            throw MixedGrade("coefficients mix rational and surd parts");
        for (int k = 0; k <= p.degree(); ++k) {
            SurdScalar c = p.coeff(k);
            out[k] = c.rat_part() + c.surd_part() * root;
        }
    } else if (any_surd) {
        for (int k = 0; k <= p.degree(); ++k) out[k] = p.coeff(k).surd_part();
    } else {
        for (int k = 0; k <= p.degree(); ++k) out[k] = p.coeff(k).rat_part();
    }
    trim(out);
    return out;
}

int sturm_distinct_positive_roots(const RatPoly& squarefree) {
    auto chain = sturm_chain(squarefree);
    return roots_in(chain, Rational(0), cauchy_bound(squarefree));
}

RootCount count_positive_roots(const RatPoly& poly, const Rational& max_width) {
    RatPoly p = poly;
    trim(p);
    if (p.empty()) throw MathError("root counting needs a nonzero polynomial");

    // factor out the root at h = 0 (excluded from the count)
    size_t low = 0;
    while (low < p.size() && p[low] == 0) ++low;
    p.erase(p.begin(), p.begin() + low);

    RootCount rc;
    if (degree(p) < 1) return rc;

    auto factors = squarefree_decompose(p);
    for (size_t idx = 0; idx < factors.size(); ++idx) {
        const RatPoly& f = factors[idx];
        if (degree(f) < 1) continue;
        auto chain = sturm_chain(f);
        Rational bound = cauchy_bound(f);
        int count = roots_in(chain, Rational(0), bound);
        if (count == 0) continue;
        std::vector<RootInterval> found;
        isolate(f, chain, Rational(0), bound, count, max_width, static_cast<int>(idx) + 1, found);
        rc.roots.insert(rc.roots.end(), found.begin(), found.end());
    }

    std::sort(rc.roots.begin(), rc.roots.end(),
              [](const RootInterval& a, const RootInterval& b) { return a.lo + a.hi < b.lo + b.hi; });

    // keep isolating intervals of different factors disjoint
    bool again = true;
    while (again) {
        again = false;
        for (size_t k = 0; k + 1 < rc.roots.size(); ++k) {
            if (rc.roots[k].hi > rc.roots[k + 1].lo && !(rc.roots[k].is_exact() && rc.roots[k + 1].is_exact())) {
                again = true;
                break;
            }
        }
        if (again) {
            Rational min_gap(0);
            for (size_t k = 0; k + 1 < rc.roots.size(); ++k) {
                Rational gap = abs((rc.roots[k + 1].lo + rc.roots[k + 1].hi) - (rc.roots[k].lo + rc.roots[k].hi)) / 2;
                if (gap > 0 && (min_gap == 0 || gap < min_gap)) min_gap = gap;
            }
            if (min_gap == 0) throw MathError("failed to separate root intervals");
            Rational finer = std::min(min_gap / 4, max_width / 2);
            return count_positive_roots(poly, finer);
        }
    }

    for (const RootInterval& r : rc.roots) {
        rc.distinct += 1;
        rc.with_multiplicity += r.multiplicity;
    }
    return rc;
}

RootCount count_positive_roots(const HPoly& p, const Rational& max_width) {
    return count_positive_roots(rationalize_grade(p), max_width);
}

} // namespace annulus
