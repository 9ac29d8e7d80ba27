#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lqflab/rational.hpp"

namespace lqflab {

/// Dense row-major rational matrix with fixed dimensions.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<Rational> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const Rational> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    RationalMatrix transpose() const;

    friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// Exact rank by fraction-free (Bareiss) elimination over the integers.
std::size_t rank(const RationalMatrix& m);

}  // namespace lqflab
