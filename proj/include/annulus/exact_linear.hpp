#ifndef ANNULUS_EXACT_LINEAR_HPP
#define ANNULUS_EXACT_LINEAR_HPP

#include <vector>

#include "annulus/surd.hpp"

namespace annulus {

class ExactMatrix {
public:
    ExactMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {
        if (rows <= 0 || cols <= 0) throw MathError("matrix dimensions must be positive");
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    SurdScalar& at(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
    const SurdScalar& at(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }

private:
    int rows_, cols_;
    std::vector<SurdScalar> data_;
};

// Fraction-free (Bareiss) elimination with row pivoting. Throws SingularMatrix.
std::vector<SurdScalar> solve_exact(const ExactMatrix& m, const std::vector<SurdScalar>& rhs);

SurdScalar determinant_exact(const ExactMatrix& m);

} // namespace annulus

#endif
