#include "annulus/exact_linear.hpp"

#include <cmath>
#include <cstdlib>

namespace annulus {

namespace {

// Bareiss condensation on an augmented matrix; returns the permutation sign.
// Each 2x2 condensation step divides by the previous pivot, which is exact.
int bareiss_forward(std::vector<std::vector<SurdScalar>>& m, int n, int width) {
    int perm_sign = 1;
    SurdScalar prev = SurdScalar::from_rational(rat(1));
    for (int k = 0; k < n; ++k) {
        int pivot_row = -1;
        double best = -1.0;
        for (int i = k; i < n; ++i) {
            if (m[i][k].is_zero()) continue;
            double mag = std::fabs(m[i][k].to_double());
            if (mag > best) {
                best = mag;
                pivot_row = i;
            }
        }
        if (pivot_row < 0) throw SingularMatrix();
        if (pivot_row != k) {
            std::swap(m[pivot_row], m[k]);
            perm_sign = -perm_sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < width; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            m[i][k] = SurdScalar();
        }
        prev = m[k][k];
    }
    return perm_sign;
}

} // namespace

std::vector<SurdScalar> solve_exact(const ExactMatrix& a, const std::vector<SurdScalar>& rhs) {
    const int n = a.rows();
    if (a.cols() != n) throw MathError("solve_exact requires a square matrix");
    if (static_cast<int>(rhs.size()) != n) throw MathError("rhs size mismatch");

    std::vector<std::vector<SurdScalar>> m(n, std::vector<SurdScalar>(n + 1));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) m[i][j] = a.at(i, j);
        m[i][n] = rhs[i];
    }

    bareiss_forward(m, n, n + 1);

    std::vector<SurdScalar> x(n);
    for (int i = n - 1; i >= 0; --i) {
        SurdScalar acc = m[i][n];
        for (int j = i + 1; j < n; ++j) acc = acc - m[i][j] * x[j];
        x[i] = acc / m[i][i];
    }
    return x;
}

SurdScalar determinant_exact(const ExactMatrix& a) {
    const int n = a.rows();
    if (a.cols() != n) throw MathError("determinant requires a square matrix");
    std::vector<std::vector<SurdScalar>> m(n, std::vector<SurdScalar>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = a.at(i, j);
    int perm_sign;
    try {
        perm_sign = bareiss_forward(m, n, n);
    } catch (const SingularMatrix&) {
        return SurdScalar();
    }
    // After Bareiss condensation the last pivot is det(A) up to row swaps.
    SurdScalar det = m[n - 1][n - 1];
    return perm_sign < 0 ? -det : det;
}

} // namespace annulus
