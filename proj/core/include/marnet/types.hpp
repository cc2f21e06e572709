#pragma once

#include <Eigen/Dense>

#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace marnet {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
/// Dimension or value problems in user-supplied objects.
struct ValidationError : Error {
    using Error::Error;
};
/// Operations requiring a stable model, or divergence during simulation.
struct StabilityError : Error {
    using Error::Error;
};
/// Singular systems, failed decompositions, non-convergence.
struct NumericError : Error {
    using Error::Error;
};
/// File read/write and parse failures.
struct IoError : Error {
    using Error::Error;
};

/// Directed edge (i, j): node j influences node i. Reports print this as
/// "j -> i" with 1-based node labels; internal indices are 0-based.
using Edge = std::pair<int, int>;

/// Active set of directed edges of a sparse multivariate autoregression.
class SparsityPattern {
public:
    SparsityPattern() = default;
    SparsityPattern(int n_nodes, std::set<Edge> edges);

    int n_nodes() const { return n_nodes_; }
    const std::set<Edge>& edges() const { return edges_; }
    bool contains(int i, int j) const { return edges_.count({i, j}) > 0; }
    void add(int i, int j);

    /// Parent set S_i, sorted ascending.
    std::vector<int> parents(int i) const;

private:
    int n_nodes_ = 0;
    std::set<Edge> edges_;
};

/// Multivariate autoregressive model of order p over N nodes:
///   x(t) = sum_r A_r x(t-r) + u(t),  u(t) ~ N(0, noise_cov).
struct MarModel {
    int n_nodes = 0;
    int order = 0;
    /// lag_coeffs[r](i, j) = a_{i,j}(r+1): influence of node j on node i at
    /// delay r+1. Size order, each matrix n_nodes x n_nodes.
    std::vector<Eigen::MatrixXd> lag_coeffs;
    Eigen::MatrixXd noise_cov;

    static MarModel zeros(int n_nodes, int order);

    /// Coefficient vector a_{i,j} = [a_{i,j}(1), ..., a_{i,j}(p)].
    Eigen::VectorXd coeff_block(int i, int j) const;

    /// Edges (i, j), i != j or i == j, with at least one nonzero lag.
    SparsityPattern support() const;

    /// Parent set S_i of the support, sorted ascending.
    std::vector<int> parents(int i) const;

    /// Throws ValidationError on shape mismatch, asymmetric noise_cov
    /// (tolerance 1e-12) or noise_cov that is not positive definite.
    void validate() const;
};

/// Realized signal matrix; row t holds x(t)^T.
struct TimeSeries {
    Eigen::MatrixXd values;

    int n_samples() const { return static_cast<int>(values.rows()); }
    int n_nodes() const { return static_cast<int>(values.cols()); }

    /// Throws ValidationError if any entry is not finite.
    void validate() const;
};

}  // namespace marnet
