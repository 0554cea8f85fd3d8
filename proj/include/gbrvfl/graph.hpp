#pragma once

#include <vector>

#include "gbrvfl/common.hpp"

namespace gbrvfl {

struct GraphWeights {
  Matrix intrinsic;  // k x k
  Matrix penalty;    // k x k
  std::vector<int> labels;
  int k = 0;
};

enum class GraphMode { IntrinsicOnly, IntrinsicAndPenalty };
const char* graph_mode_name(GraphMode m);
GraphMode graph_mode_from_name(const std::string& name);

struct EmbeddingMatrix {
  Matrix u;  // f x f symmetric
  GraphMode mode = GraphMode::IntrinsicOnly;
};

// intrinsic(i,j) = 1/count(class of i) when labels match, else 0;
// penalty(i,j)   = 1/k - 1/count(class of i) when labels match, else 1/k.
// The two always sum to (1/k) * ones.
GraphWeights lda_weights(const std::vector<int>& labels);

// L = diag(row sums) - W
Matrix laplacian(const Matrix& w);

// IntrinsicOnly: U = D' L(intrinsic) D (positive semidefinite).
// IntrinsicAndPenalty: U = symmetrize(pinv(D' L(penalty) D) * D' L(intrinsic) D)
// with eigenvalues below -1e-8 clipped to 0; the product is generally
// non-symmetric, so this mode is an explicit reinterpretation.
EmbeddingMatrix embedding_matrix(const Matrix& d, const GraphWeights& gw,
                                 GraphMode mode);

}  // namespace gbrvfl
