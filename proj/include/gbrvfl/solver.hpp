#pragma once

#include "gbrvfl/common.hpp"

namespace gbrvfl {

struct RidgeProblem {
  Matrix design;   // n x f
  Matrix targets;  // n x C
  double reg = 1.0;  // C > 0; ridge strength is 1/C
};

struct GraphRidgeProblem {
  RidgeProblem base;
  Matrix graph_matrix;    // f x f, symmetric
  double graph_reg = 0.0; // alpha >= 0
};

enum class SolveBranch { Primal, Dual, Graph };
const char* solve_branch_name(SolveBranch b);

// (D'D + (1/C) I)^-1 D'T through a Cholesky factorization; no explicit inverse.
Matrix solve_primal(const RidgeProblem& p);

// D' ((1/C) I + D D')^-1 T
Matrix solve_dual(const RidgeProblem& p);

struct AutoSolution {
  Matrix weights;
  SolveBranch branch;
};

// primal when f <= n (ties inclusive), dual otherwise
AutoSolution solve_auto(const RidgeProblem& p);

// (D'D + (1/C) I + (alpha/C) U)^-1 D'T; alpha = 0 takes the identical code
// path as solve_primal.
Matrix solve_graph(const GraphRidgeProblem& p);

// Minimum-norm least-squares via SVD; singular values below
// max(n,f) * eps * sigma_max are treated as zero.
Matrix pseudo_inverse_solve(const Matrix& design, const Matrix& targets);
Matrix pseudo_inverse(const Matrix& m);

}  // namespace gbrvfl
