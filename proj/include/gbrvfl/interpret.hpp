#pragma once

#include <optional>
#include <string>

#include "gbrvfl/common.hpp"

namespace gbrvfl {

// Effective-feature matrices. Each is pinv(B') (B'B + (1/C) I [+ (alpha/C) U])
// over a basis B: E1 uses the GB design with the graph term, E2 the GB design
// without it, E3 the GB centers, E4 the direct-link design over raw inputs,
// E5 the hidden features alone, E6 the raw inputs. Rows correspond to the
// basis rows (balls for E1..E3, samples for E4..E6).
struct FeatureMatrix {
  int which = 0;  // 1..6
  Matrix data;
  std::string source;
};

FeatureMatrix feature_matrix(int which, const Matrix& basis, double reg,
                             double graph_reg = 0.0,
                             const Matrix* graph_matrix = nullptr,
                             const std::string& source = "");

FeatureMatrix crop_to(const FeatureMatrix& e, Eigen::Index target_rows,
                      Eigen::Index target_cols);

struct DistanceMatrix {
  Matrix data;  // square, symmetric, zero diagonal
};

// Euclidean distance between every pair of rows.
DistanceMatrix pairwise_distances(const Matrix& rows);
inline DistanceMatrix pairwise_distances(const FeatureMatrix& e) {
  return pairwise_distances(e.data);
}

struct InterpretReport {
  double dde1 = 0.0;
  double dde2 = 0.0;
  double dde4 = 0.0;
  double dde5 = 0.0;
};

// Frobenius distances: dde1/dde2 against de3, dde4/dde5 against de6.
InterpretReport dde_scores(const DistanceMatrix& de1, const DistanceMatrix& de2,
                           const DistanceMatrix& de3, const DistanceMatrix& de4,
                           const DistanceMatrix& de5, const DistanceMatrix& de6);

void save_matrix_csv(const Matrix& m, const std::string& path);
// 8-bit grayscale ASCII PGM, min-max scaled; constant input maps to 0.
void save_matrix_pgm(const Matrix& m, const std::string& path);

}  // namespace gbrvfl
