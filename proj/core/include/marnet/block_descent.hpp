#pragma once

#include <vector>

#include "marnet/types.hpp"

namespace marnet {

/// Penalized least squares in normal-equation form:
///   (1/n) ||y - X a||^2 + lambda * sum over penalized groups of ||a_g||_2.
/// Only X^T X, X^T y and y^T y are kept, so iterations cost O((Np) p) per
/// block regardless of the number of rows.
struct GroupedProblem {
    Eigen::MatrixXd gram;  // X^T X
    Eigen::VectorXd xty;   // X^T y
    double yty = 0.0;      // y^T y
    int n_rows = 0;

    std::vector<int> group_start;   // first column of each group
    std::vector<int> group_size;
    std::vector<char> penalized;    // 0 = never penalized (e.g. a self block)

    int n_groups() const { return static_cast<int>(group_start.size()); }
    int n_cols() const { return static_cast<int>(gram.rows()); }

    static GroupedProblem from_dense(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                     std::vector<int> group_start,
                                     std::vector<int> group_size,
                                     std::vector<char> penalized);
};

struct BlockDescentConfig {
    double tol = 1e-8;        // max blockwise coefficient change per sweep
    int max_sweeps = 100000;
    const Eigen::VectorXd* warm_start = nullptr;
};

struct BlockDescentResult {
    Eigen::VectorXd coeffs;
    double objective = 0.0;
    int sweeps = 0;
    bool converged = false;
};

/// Cyclic block coordinate descent with exact per-block minimization.
/// A block whose gradient norm is within a factor 1 + 1e-9 of the threshold
/// stays exactly zero, resolving the boundary tie toward sparsity.
/// lambda = 0 is solved directly from the normal equations.
BlockDescentResult block_descent(const GroupedProblem& problem, double lambda,
                                 const BlockDescentConfig& config = {});

/// Objective value at a given coefficient vector.
double grouped_objective(const GroupedProblem& problem, double lambda,
                         const Eigen::VectorXd& coeffs);

}  // namespace marnet
