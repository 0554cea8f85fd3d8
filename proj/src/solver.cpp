#include "gbrvfl/solver.hpp"

#include <Eigen/SVD>

#include <limits>

namespace gbrvfl {

namespace {

void check_problem(const RidgeProblem& p) {
  if (p.reg <= 0.0)
    throw Error(ErrorKind::InvalidArgument, "regularization parameter must be positive");
  if (p.design.rows() != p.targets.rows())
    throw Error(ErrorKind::DimensionMismatch, "design and targets row counts differ");
  if (!p.design.allFinite() || !p.targets.allFinite())
    throw Error(ErrorKind::NumericalFailure, "non-finite entries in the ridge problem");
}

// Shared primal-shaped path: (D'D + (1/C) I + (alpha/C) U)^-1 D'T.
// solve_primal calls this with alpha = 0 so the graph solve at alpha = 0 is
// bitwise the same computation.
Matrix solve_feature_space(const RidgeProblem& p, double alpha, const Matrix* u) {
  Matrix gram = p.design.transpose() * p.design;
  gram.diagonal().array() += 1.0 / p.reg;
  if (alpha != 0.0 && u != nullptr) gram.noalias() += (alpha / p.reg) * (*u);
  Eigen::LLT<Matrix> llt(gram);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorKind::NumericalFailure, "Cholesky factorization failed");
  return llt.solve(p.design.transpose() * p.targets);
}

}  // namespace

const char* solve_branch_name(SolveBranch b) {
  switch (b) {
    case SolveBranch::Primal: return "primal";
    case SolveBranch::Dual: return "dual";
    case SolveBranch::Graph: return "graph";
  }
  return "?";
}

Matrix solve_primal(const RidgeProblem& p) {
  check_problem(p);
  return solve_feature_space(p, 0.0, nullptr);
}

Matrix solve_dual(const RidgeProblem& p) {
  check_problem(p);
  Matrix gram = p.design * p.design.transpose();
  gram.diagonal().array() += 1.0 / p.reg;
  Eigen::LLT<Matrix> llt(gram);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorKind::NumericalFailure, "Cholesky factorization failed");
  return p.design.transpose() * llt.solve(p.targets);
}

AutoSolution solve_auto(const RidgeProblem& p) {
  check_problem(p);
  if (p.design.cols() <= p.design.rows())
    return {solve_primal(p), SolveBranch::Primal};
  return {solve_dual(p), SolveBranch::Dual};
}

Matrix solve_graph(const GraphRidgeProblem& p) {
  check_problem(p.base);
  if (p.graph_reg < 0.0)
    throw Error(ErrorKind::InvalidArgument, "graph regularization must be nonnegative");
  if (p.graph_reg != 0.0) {
    if (p.graph_matrix.rows() != p.base.design.cols() ||
        p.graph_matrix.cols() != p.base.design.cols())
      throw Error(ErrorKind::DimensionMismatch, "graph matrix must be f x f");
    if (!p.graph_matrix.allFinite())
      throw Error(ErrorKind::NumericalFailure, "non-finite entries in the graph matrix");
  }
  return solve_feature_space(p.base, p.graph_reg, &p.graph_matrix);
}

Matrix pseudo_inverse(const Matrix& m) {
  if (m.size() == 0) return m.transpose();
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  double cutoff = std::max(m.rows(), m.cols()) *
                  std::numeric_limits<double>::epsilon() *
                  (sv.size() > 0 ? sv(0) : 0.0);
  Vector inv = Vector::Zero(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) inv(i) = 1.0 / sv(i);
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

Matrix pseudo_inverse_solve(const Matrix& design, const Matrix& targets) {
  if (design.rows() != targets.rows())
    throw Error(ErrorKind::DimensionMismatch, "design and targets row counts differ");
  return pseudo_inverse(design) * targets;
}

}  // namespace gbrvfl
