#pragma once

#include <utility>
#include <vector>

#include "marnet/types.hpp"

namespace marnet {

/// Stationary covariance of the stacked state [x(t); ...; x(t-p+1)].
/// Block (u, v) equals Gamma(v - u) with Gamma(tau) = E[x(t) x(t-tau)^T].
struct StationaryCovariance {
    int n_nodes = 0;
    int order = 0;
    Eigen::MatrixXd block_toeplitz;          // pN x pN
    std::vector<Eigen::MatrixXd> lag_covs;   // Gamma(0), ..., Gamma(p-1)

    /// Gamma(tau) for |tau| < order; negative lags via Gamma(-tau) = Gamma(tau)^T.
    Eigen::MatrixXd gamma(int tau) const;
};

enum class CovarianceMethod {
    kronecker,    // closed-form solve of the vectorized fixed-point equation
    fixed_point,  // iterate G <- A G A^T + S to convergence
    auto_select,  // kronecker for small state dimension, fixed_point otherwise
};

/// Solves Gamma = A Gamma A^T + Sigma_embedded for a stable model.
/// Both methods agree to 1e-8 relative; the fixed-point path iterates to
/// 1e-13 relative with at most 1e5 sweeps.
StationaryCovariance stationary_covariance(
    const MarModel& model, CovarianceMethod method = CovarianceMethod::kronecker);

/// Residual ||G - A G A^T - S||_F / max(1, ||G||_F); certifies a solution.
double lyapunov_residual(const MarModel& model, const StationaryCovariance& cov);

/// Per-row second-moment matrix R_{rows,cols} = E[X_rows^T X_cols] of the
/// lagged design blocks (lags 1..p per node). Entry ((j,a),(k,b)) equals
/// Gamma_{jk}(b - a) -- the same lag convention the design builder uses.
Eigen::MatrixXd sub_cov(const StationaryCovariance& cov,
                        const std::vector<int>& rows,
                        const std::vector<int>& cols);

/// Population least-squares coefficients predicting the design block of a
/// non-parent node from the parent blocks.
struct PredictorMatrix {
    int target = 0;                     // node j being predicted
    std::vector<int> conditioning;      // parent set, ascending
    Eigen::MatrixXd stacked;            // (|S| p) x p
    double condition = 0.0;             // condition number of R_{S,S}

    /// p x p block for the k-th conditioning node.
    Eigen::MatrixXd block(int k) const;
};

PredictorMatrix predictor_matrix(const StationaryCovariance& cov,
                                 const std::vector<int>& parents, int j);

/// Diagonal similarity that gives every node unit stationary power.
struct NormalizationTransform {
    Eigen::VectorXd node_powers;  // sigma_i^2 = Gamma(0)_{ii} before normalizing
};

/// Returns the model with coefficients a_{i,j}(r) * sigma_j / sigma_i and
/// noise D^{-1/2} Sigma D^{-1/2}; its Gamma(0) has unit diagonal. Spectrum
/// and support are preserved exactly.
std::pair<MarModel, NormalizationTransform> normalize_model(
    const MarModel& model, const StationaryCovariance& cov);

}  // namespace marnet
