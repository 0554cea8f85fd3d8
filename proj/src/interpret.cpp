#include "gbrvfl/interpret.hpp"

#include <cmath>
#include <fstream>

#include "gbrvfl/kernels.hpp"
#include "gbrvfl/solver.hpp"

namespace gbrvfl {

FeatureMatrix feature_matrix(int which, const Matrix& basis, double reg,
                             double graph_reg, const Matrix* graph_matrix,
                             const std::string& source) {
  if (which < 1 || which > 6)
    throw Error(ErrorKind::InvalidArgument, "feature matrix index must be 1..6");
  if (!(reg > 0.0)) throw Error(ErrorKind::InvalidArgument, "reg must be positive");
  if (graph_reg < 0.0)
    throw Error(ErrorKind::InvalidArgument, "graph_reg must be non-negative");
  if (basis.rows() < 1 || basis.cols() < 1)
    throw Error(ErrorKind::InvalidArgument, "empty basis");
  if (!basis.allFinite())
    throw Error(ErrorKind::NumericalFailure, "basis contains non-finite values");

  Eigen::Index f = basis.cols();
  if (graph_matrix) {
    if (graph_matrix->rows() != f || graph_matrix->cols() != f)
      throw Error(ErrorKind::ShapeMismatch, "graph matrix does not match basis width");
    if (!graph_matrix->allFinite())
      throw Error(ErrorKind::NumericalFailure, "graph matrix contains non-finite values");
  }

  Matrix inner = basis.transpose() * basis;
  inner.diagonal().array() += 1.0 / reg;
  if (graph_matrix && graph_reg != 0.0) inner += (graph_reg / reg) * *graph_matrix;

  FeatureMatrix e;
  e.which = which;
  e.source = source;
  e.data = pseudo_inverse(basis.transpose()) * inner;
  return e;
}

FeatureMatrix crop_to(const FeatureMatrix& e, Eigen::Index target_rows,
                      Eigen::Index target_cols) {
  if (target_rows < 1 || target_cols < 1)
    throw Error(ErrorKind::InvalidArgument, "crop target must be non-empty");
  if (target_rows > e.data.rows() || target_cols > e.data.cols())
    throw Error(ErrorKind::TargetLarger, "crop target exceeds the matrix");
  FeatureMatrix out;
  out.which = e.which;
  out.source = e.source;
  out.data = e.data.topLeftCorner(target_rows, target_cols);
  return out;
}

DistanceMatrix pairwise_distances(const Matrix& rows) {
  Eigen::Index n = rows.rows();
  size_t p = static_cast<size_t>(rows.cols());
  const auto& k = kernels::ops();
  DistanceMatrix de;
  de.data = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double* a = rows.data() + i * rows.cols();
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double* b = rows.data() + j * rows.cols();
      double dist = std::sqrt(k.squared_distance(a, b, p));
      de.data(i, j) = dist;
      de.data(j, i) = dist;
    }
  }
  return de;
}

InterpretReport dde_scores(const DistanceMatrix& de1, const DistanceMatrix& de2,
                           const DistanceMatrix& de3, const DistanceMatrix& de4,
                           const DistanceMatrix& de5, const DistanceMatrix& de6) {
  auto same = [](const DistanceMatrix& a, const DistanceMatrix& b) {
    return a.data.rows() == b.data.rows() && a.data.cols() == b.data.cols();
  };
  if (!same(de1, de3) || !same(de2, de3))
    throw Error(ErrorKind::ShapeMismatch, "ball-side distance matrices disagree in size");
  if (!same(de4, de6) || !same(de5, de6))
    throw Error(ErrorKind::ShapeMismatch, "sample-side distance matrices disagree in size");

  InterpretReport rep;
  rep.dde1 = (de1.data - de3.data).norm();
  rep.dde2 = (de2.data - de3.data).norm();
  rep.dde4 = (de4.data - de6.data).norm();
  rep.dde5 = (de5.data - de6.data).norm();
  return rep;
}

void save_matrix_csv(const Matrix& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::MissingFile, "cannot write file: " + path);
  out.precision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ",";
      out << m(i, j);
    }
    out << "\n";
  }
}

void save_matrix_pgm(const Matrix& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::MissingFile, "cannot write file: " + path);
  double lo = m.minCoeff();
  double hi = m.maxCoeff();
  double span = hi - lo;
  out << "P2\n" << m.cols() << " " << m.rows() << "\n255\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      long v = span > 0.0 ? std::lround(255.0 * (m(i, j) - lo) / span) : 0;
      if (j) out << " ";
      out << v;
    }
    out << "\n";
  }
}

}  // namespace gbrvfl
