#pragma once

#include "mncc/core.hpp"

namespace mncc {

struct EigenDecomposition {
    Vector values;   ///< descending
    Matrix vectors;  ///< orthonormal columns, matching `values`
};

/// Throws std::invalid_argument unless `m` is symmetric to within
/// 1e-9 * max(1, max|m_ij|).
EigenDecomposition symmetric_eigendecomposition(const MatrixRef& m);

/// Soft-thresholds the eigenvalues of the symmetric part of `m` by `theta`
/// toward zero: lambda -> sign(lambda) * max(|lambda| - theta, 0).
Matrix shrink_eigenvalues(const MatrixRef& m, double theta);

/// Sum of |eigenvalues| of the symmetric part (the trace norm for symmetric input).
double symmetric_trace_norm(const MatrixRef& m);

/// Rows with l2 norm above one (beyond 1e-12 of rounding slack) are rescaled
/// to unit norm; the rest are unchanged, so the projection is idempotent.
Matrix project_max_norm_rows(const MatrixRef& f);
void project_max_norm_rows_inplace(Matrix& f);

/// Largest row l2 norm.
double max_row_norm(const MatrixRef& f);

} // namespace mncc
