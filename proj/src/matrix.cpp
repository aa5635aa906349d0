#include "envcert/matrix.hpp"

#include "envcert/error.hpp"

#include <optional>
#include <string>

namespace envcert {

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

RationalMatrix::RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw DimensionMismatch("ragged matrix literal");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RationalMatrix RationalMatrix::diagonal(std::span<const Rational> entries) {
    RationalMatrix m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return m;
}

RationalMatrix RationalMatrix::column(std::span<const Rational> entries) {
    RationalMatrix m(entries.size(), 1);
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, 0) = entries[i];
    return m;
}

RationalVector RationalMatrix::col(std::size_t c) const {
    RationalVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

RationalMatrix RationalMatrix::transpose() const {
    RationalMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

RationalMatrix RationalMatrix::select_rows(std::span<const std::size_t> rows) const {
    RationalMatrix m(rows.size(), cols_);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i] >= rows_) throw DimensionMismatch("row index out of range");
        for (std::size_t c = 0; c < cols_; ++c) m(i, c) = (*this)(rows[i], c);
    }
    return m;
}

RationalMatrix RationalMatrix::select_cols(std::span<const std::size_t> cols) const {
    RationalMatrix m(rows_, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j] >= cols_) throw DimensionMismatch("column index out of range");
        for (std::size_t r = 0; r < rows_; ++r) m(r, j) = (*this)(r, cols[j]);
    }
    return m;
}

RationalMatrix RationalMatrix::drop_zero_cols() const {
    std::vector<std::size_t> keep;
    for (std::size_t c = 0; c < cols_; ++c) {
        for (std::size_t r = 0; r < rows_; ++r) {
            if (sgn((*this)(r, c)) != 0) {
                keep.push_back(c);
                break;
            }
        }
    }
    return select_cols(keep);
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("matrix product shape");
    RationalMatrix m(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Rational& aik = a(i, k);
            if (sgn(aik) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) m(i, j) += aik * b(k, j);
        }
    return m;
}

RationalVector operator*(const RationalMatrix& a, std::span<const Rational> x) {
    if (a.cols() != x.size()) throw DimensionMismatch("matrix-vector product shape");
    RationalVector y(a.rows(), Rational(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) y[i] += a(i, k) * x[k];
    return y;
}

RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("matrix sum shape");
    RationalMatrix m(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j) + b(i, j);
    return m;
}

RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("matrix difference shape");
    RationalMatrix m(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j) - b(i, j);
    return m;
}

RationalMatrix operator*(const Rational& s, const RationalMatrix& a) {
    RationalMatrix m(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = s * a(i, j);
    return m;
}

RationalVector operator+(std::span<const Rational> a, std::span<const Rational> b) {
    if (a.size() != b.size()) throw DimensionMismatch("vector sum shape");
    RationalVector v(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) v[i] = a[i] + b[i];
    return v;
}

RationalVector operator-(std::span<const Rational> a, std::span<const Rational> b) {
    if (a.size() != b.size()) throw DimensionMismatch("vector difference shape");
    RationalVector v(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) v[i] = a[i] - b[i];
    return v;
}

RationalMatrix hstack(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.rows() != b.rows()) throw DimensionMismatch("hstack row count");
    RationalMatrix m(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
    }
    return m;
}

Rational mat_inf_norm(const RationalMatrix& m) {
    Rational best(0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Rational sum(0);
        for (const Rational& v : m.row(i)) sum += abs(v);
        if (sum > best) best = sum;
    }
    return best;
}

Rational vec_inf_norm(std::span<const Rational> v) {
    Rational best(0);
    for (const Rational& x : v)
        if (abs(x) > best) best = abs(x);
    return best;
}

namespace {

/// Gauss-Jordan reduction of [H | B]. Returns the pivot column chosen for
/// each row (nullopt for rows that reduced to zero in H).
std::vector<std::optional<std::size_t>> reduce(RationalMatrix& h, RationalMatrix& b) {
    const std::size_t r = h.rows();
    const std::size_t k = h.cols();
    std::vector<bool> used(k, false);
    std::vector<std::optional<std::size_t>> pivots(r);
    for (std::size_t i = 0; i < r; ++i) {
        std::optional<std::size_t> best;
        Rational best_abs(0);
        for (std::size_t j = 0; j < k; ++j) {
            if (used[j]) continue;
            Rational a = abs(h(i, j));
            if (a > best_abs) {
                best_abs = a;
                best = j;
            }
        }
        if (!best) continue;
        const std::size_t pc = *best;
        used[pc] = true;
        pivots[i] = pc;
        const Rational inv = 1 / h(i, pc);
        for (std::size_t j = 0; j < k; ++j) h(i, j) *= inv;
        for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) *= inv;
        for (std::size_t other = 0; other < r; ++other) {
            if (other == i) continue;
            const Rational factor = h(other, pc);
            if (sgn(factor) == 0) continue;
            for (std::size_t j = 0; j < k; ++j) h(other, j) -= factor * h(i, j);
            for (std::size_t j = 0; j < b.cols(); ++j) b(other, j) -= factor * b(i, j);
        }
    }
    return pivots;
}

}  // namespace

RationalMatrix right_inverse(const RationalMatrix& h) {
    if (h.rows() > h.cols())
        throw RankDeficient("matrix with " + std::to_string(h.rows()) + " rows and " +
                            std::to_string(h.cols()) + " columns has no right inverse");
    RationalMatrix work = h;
    RationalMatrix rhs = RationalMatrix::identity(h.rows());
    const auto pivots = reduce(work, rhs);
    RationalMatrix x(h.cols(), h.rows());
    for (std::size_t i = 0; i < h.rows(); ++i) {
        if (!pivots[i]) throw RankDeficient("no pivot for row " + std::to_string(i));
        for (std::size_t j = 0; j < h.rows(); ++j) x(*pivots[i], j) = rhs(i, j);
    }
    return x;
}

RationalVector linear_solve(const RationalMatrix& h, std::span<const Rational> y) {
    if (y.size() != h.rows()) throw DimensionMismatch("right-hand side length");
    RationalMatrix work = h;
    RationalMatrix rhs = RationalMatrix::column(y);
    const auto pivots = reduce(work, rhs);
    RationalVector x(h.cols(), Rational(0));
    for (std::size_t i = 0; i < h.rows(); ++i) {
        if (!pivots[i]) {
            if (sgn(rhs(i, 0)) != 0) throw Inconsistent("row " + std::to_string(i) + " reduces to 0 = nonzero");
            continue;
        }
        x[*pivots[i]] = rhs(i, 0);
    }
    return x;
}

}  // namespace envcert
