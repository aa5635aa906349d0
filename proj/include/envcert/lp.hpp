#pragma once

#include <cstddef>
#include <vector>

namespace envcert {

/// Row-major dense matrix of doubles for the LP layer.
struct DenseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    DenseMatrix() = default;
    DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
    double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpOptions {
    double tol = 1e-9;
    unsigned max_iter = 10000;
};

struct LpResult {
    LpStatus status = LpStatus::infeasible;
    std::vector<double> x;
    double objective = 0.0;
    unsigned iterations = 0;
};

/// minimize c.x subject to A x = b, x >= 0, by a dense two-phase tableau
/// simplex. Dantzig pricing, switching to Bland's rule after a run of
/// degenerate pivots. Throws NumericalFailure past the iteration cap.
LpResult solve_lp(const DenseMatrix& a, const std::vector<double>& b, const std::vector<double>& c,
                  const LpOptions& options = {});

}  // namespace envcert
