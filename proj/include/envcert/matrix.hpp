#pragma once

#include "envcert/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace envcert {

using RationalVector = std::vector<Rational>;

/// Dense row-major matrix of exact rationals. A matrix may have zero columns
/// (a zonotope without generators).
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols);
    RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

    static RationalMatrix identity(std::size_t n);
    static RationalMatrix diagonal(std::span<const Rational> entries);
    static RationalMatrix column(std::span<const Rational> entries);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const Rational> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    RationalVector col(std::size_t c) const;

    RationalMatrix transpose() const;
    RationalMatrix select_rows(std::span<const std::size_t> rows) const;
    RationalMatrix select_cols(std::span<const std::size_t> cols) const;
    /// Drops columns whose entries are all zero.
    RationalMatrix drop_zero_cols() const;

    bool operator==(const RationalMatrix& other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
RationalVector operator*(const RationalMatrix& a, std::span<const Rational> x);
RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix operator*(const Rational& s, const RationalMatrix& a);

RationalVector operator+(std::span<const Rational> a, std::span<const Rational> b);
RationalVector operator-(std::span<const Rational> a, std::span<const Rational> b);

/// [a | b]; row counts must agree.
RationalMatrix hstack(const RationalMatrix& a, const RationalMatrix& b);

/// Maximum absolute row sum.
Rational mat_inf_norm(const RationalMatrix& m);
/// Maximum absolute entry.
Rational vec_inf_norm(std::span<const Rational> v);

/// Exact right inverse X with H X = I. Gauss-Jordan elimination row by row;
/// each row pivots on its largest-magnitude entry among unused columns
/// (lowest index on ties), and rows of X belonging to non-pivot columns are
/// zero. Throws RankDeficient if some row has no pivot.
RationalMatrix right_inverse(const RationalMatrix& h);

/// Exact solution of H x = y under the same pivot convention as
/// right_inverse. Throws Inconsistent if the system has no solution.
RationalVector linear_solve(const RationalMatrix& h, std::span<const Rational> y);

}  // namespace envcert
