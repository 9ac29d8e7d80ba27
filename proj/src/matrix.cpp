#include "lqflab/matrix.hpp"

#include <utility>

namespace lqflab {

RationalMatrix RationalMatrix::transpose() const {
    RationalMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

std::size_t rank(const RationalMatrix& m) {
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    if (rows == 0 || cols == 0) return 0;

    // Clear denominators row by row; scaling a row does not change the rank.
    std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        mpz_class l = 1;
        for (std::size_t c = 0; c < cols; ++c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).denominator().get_mpz_t());
        for (std::size_t c = 0; c < cols; ++c) a[r][c] = m(r, c).numerator() * (l / m(r, c).denominator());
    }

    mpz_class prev_pivot = 1;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rank;
        while (pivot < rows && a[pivot][c] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(a[pivot], a[rank]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            for (std::size_t k = c + 1; k < cols; ++k) {
                a[r][k] = a[r][k] * a[rank][c] - a[r][c] * a[rank][k];
                mpz_divexact(a[r][k].get_mpz_t(), a[r][k].get_mpz_t(), prev_pivot.get_mpz_t());
            }
            a[r][c] = 0;
        }
        prev_pivot = a[rank][c];
        ++rank;
    }
    return rank;
}

}  // namespace lqflab
