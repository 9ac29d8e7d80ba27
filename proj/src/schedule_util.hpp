#pragma once

#include "lqflab/graph.hpp"
#include "lqflab/matrix.hpp"
#include "lqflab/rational.hpp"

namespace lqflab::detail {

/// Rows = nodes, columns = schedules, plus trailing zero rows/columns.
inline RationalMatrix schedule_block(const ScheduleMatrix& m, std::size_t extra_rows, std::size_t extra_cols) {
    RationalMatrix a(m.rows() + extra_rows, m.cols() + extra_cols);
    for (std::size_t k = 0; k < m.cols(); ++k) m.column(k).for_each([&](Node v) { a(v, k) = 1; });
    return a;
}

/// M w.
inline RationalVector mix(const ScheduleMatrix& m, const RationalVector& w) {
    RationalVector out(m.rows());
    for (std::size_t k = 0; k < m.cols(); ++k)
        if (!w[k].is_zero()) m.column(k).for_each([&](Node v) { out[v] += w[k]; });
    return out;
}

/// m_k' y.
inline Rational column_dot(const ScheduleMatrix& m, std::size_t k, const RationalVector& y) {
    Rational s;
    m.column(k).for_each([&](Node v) { s += y[v]; });
    return s;
}

inline Rational sum(const RationalVector& v) {
    Rational s;
    for (const auto& x : v) s += x;
    return s;
}

inline bool all_nonnegative(const RationalVector& v) {
    for (const auto& x : v)
        if (x.sign() < 0) return false;
    return true;
}

}  // namespace lqflab::detail
