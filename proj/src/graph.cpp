#include "gbrvfl/graph.hpp"

#include <algorithm>

#include "gbrvfl/solver.hpp"

namespace gbrvfl {

const char* graph_mode_name(GraphMode m) {
  switch (m) {
    case GraphMode::IntrinsicOnly: return "intrinsic_only";
    case GraphMode::IntrinsicAndPenalty: return "intrinsic_and_penalty";
  }
  return "?";
}

GraphMode graph_mode_from_name(const std::string& name) {
  if (name == "intrinsic_only") return GraphMode::IntrinsicOnly;
  if (name == "intrinsic_and_penalty") return GraphMode::IntrinsicAndPenalty;
  throw Error(ErrorKind::InvalidArgument, "unknown graph mode: " + name);
}

GraphWeights lda_weights(const std::vector<int>& labels) {
  const int k = static_cast<int>(labels.size());
  if (k < 2)
    throw Error(ErrorKind::TooFewSamples, "graph weights need at least 2 rows");
  int max_label = *std::max_element(labels.begin(), labels.end());
  std::vector<int> counts(max_label + 1, 0);
  for (int y : labels) {
    if (y < 0) throw Error(ErrorKind::InvalidArgument, "negative class index");
    counts[y]++;
  }
  int present = 0;
  for (int c : counts) present += c > 0;
  if (present < 2)
    throw Error(ErrorKind::InvalidArgument, "graph weights need at least 2 classes");

  GraphWeights gw;
  gw.labels = labels;
  gw.k = k;
  gw.intrinsic = Matrix::Zero(k, k);
  gw.penalty = Matrix::Constant(k, k, 1.0 / k);
  for (int i = 0; i < k; ++i) {
    double inv = 1.0 / counts[labels[i]];
    for (int j = 0; j < k; ++j) {
      if (labels[i] == labels[j]) {
        gw.intrinsic(i, j) = inv;
        gw.penalty(i, j) = 1.0 / k - inv;
      }
    }
  }
  return gw;
}

Matrix laplacian(const Matrix& w) {
  if (w.rows() != w.cols())
    throw Error(ErrorKind::ShapeMismatch, "laplacian needs a square matrix");
  Matrix l = -w;
  l.diagonal() += w.rowwise().sum();
  return l;
}

EmbeddingMatrix embedding_matrix(const Matrix& d, const GraphWeights& gw,
                                 GraphMode mode) {
  if (d.rows() != gw.k)
    throw Error(ErrorKind::DimensionMismatch,
                "design rows must equal the graph weight dimension");

  Matrix u_int = d.transpose() * laplacian(gw.intrinsic) * d;
  u_int = 0.5 * (u_int + Matrix(u_int.transpose()));

  EmbeddingMatrix em;
  em.mode = mode;
  if (mode == GraphMode::IntrinsicOnly) {
    em.u = u_int;
    return em;
  }

  Matrix u_pen = d.transpose() * laplacian(gw.penalty) * d;
  u_pen = 0.5 * (u_pen + Matrix(u_pen.transpose()));
  Matrix raw = pseudo_inverse(u_pen) * u_int;
  if (!raw.allFinite())
    throw Error(ErrorKind::NumericalFailure, "penalty-graph pseudo-inverse failed");
  Matrix sym = 0.5 * (raw + Matrix(raw.transpose()));

  // the symmetrized product can carry spurious negative curvature; clip it
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  if (es.info() != Eigen::Success)
    throw Error(ErrorKind::NumericalFailure, "eigendecomposition failed");
  Vector ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) < -1e-8) ev(i) = 0.0;
  em.u = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
  em.u = 0.5 * (em.u + Matrix(em.u.transpose()));
  return em;
}

}  // namespace gbrvfl
