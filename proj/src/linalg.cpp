#include "mncc/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mncc {

EigenDecomposition symmetric_eigendecomposition(const MatrixRef& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("eigendecomposition needs a square matrix");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
        throw std::invalid_argument("eigendecomposition needs a symmetric matrix");
    const Matrix sym = 0.5 * (m + m.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver did not converge");

    // Eigen returns ascending order.
    const Eigen::Index n = m.rows();
    EigenDecomposition out{Vector(n), Matrix(n, n)};
    for (Eigen::Index i = 0; i < n; ++i) {
        out.values(i) = solver.eigenvalues()(n - 1 - i);
        out.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
    }
    return out;
}

Matrix shrink_eigenvalues(const MatrixRef& m, double theta) {
    const Matrix sym = 0.5 * (m + m.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
    Vector w = solver.eigenvalues();
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        const double mag = std::max(std::abs(w(i)) - theta, 0.0);
        w(i) = std::copysign(mag, w(i));
    }
    const Matrix& v = solver.eigenvectors();
    return v * w.asDiagonal() * v.transpose();
}

double symmetric_trace_norm(const MatrixRef& m) {
    const Matrix sym = 0.5 * (m + m.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().sum();
}

void project_max_norm_rows_inplace(Matrix& f) {
    for (Eigen::Index i = 0; i < f.rows(); ++i) {
        const double norm = f.row(i).norm();
        if (norm > 1.0 + 1e-12) f.row(i) /= norm;
    }
}

Matrix project_max_norm_rows(const MatrixRef& f) {
    Matrix out = f;
    project_max_norm_rows_inplace(out);
    return out;
}

double max_row_norm(const MatrixRef& f) {
    if (f.rows() == 0) return 0.0;
    return f.rowwise().norm().maxCoeff();
}

} // namespace mncc
