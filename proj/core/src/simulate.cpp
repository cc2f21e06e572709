#include "marnet/simulate.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

#include "marnet/covariance.hpp"
#include "marnet/model.hpp"
#include "marnet/rng.hpp"

namespace marnet {

namespace {

Eigen::MatrixXd symmetric_factor(const Eigen::MatrixXd& cov) {
    // eigenfactor rather than Cholesky: Gamma may be semidefinite to roundoff
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
    if (eig.info() != Eigen::Success)
        throw NumericError("simulate: factorization of stationary covariance failed");
    return eig.eigenvectors() *
           eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
}

}  // namespace

TimeSeries simulate(const MarModel& model, int n_samples, std::uint64_t seed,
                    const SimInit& init) {
    model.validate();
    if (n_samples < 1) throw ValidationError("simulate: n_samples must be >= 1");

    const int n = model.n_nodes, p = model.order;
    Rng rng(seed);

    Eigen::LLT<Eigen::MatrixXd> noise_llt(model.noise_cov);
    if (noise_llt.info() != Eigen::Success)
        throw ValidationError("simulate: noise_cov is not positive definite");
    const Eigen::MatrixXd noise_factor = noise_llt.matrixL();

    // history[r] holds x(t - 1 - r)
    std::vector<Eigen::VectorXd> history(p, Eigen::VectorXd::Zero(n));
    int discard = 0;
    if (init.kind == SimInit::Kind::stationary) {
        const auto cov = stationary_covariance(model, CovarianceMethod::auto_select);
        const Eigen::MatrixXd factor = symmetric_factor(cov.block_toeplitz);
        Eigen::VectorXd z(n * p);
        for (int k = 0; k < n * p; ++k) z(k) = rng.normal();
        const Eigen::VectorXd state = factor * z;
        for (int r = 0; r < p; ++r) history[r] = state.segment(r * n, n);
    } else if (init.kind == SimInit::Kind::burn_in) {
        discard = init.burn_in_samples >= 0 ? init.burn_in_samples : 500 * p;
    }

    TimeSeries out;
    out.values.resize(n_samples, n);
    for (int t = -discard; t < n_samples; ++t) {
        Eigen::VectorXd x(n);
        for (int k = 0; k < n; ++k) x(k) = rng.normal();
        x = (noise_factor * x).eval();
        for (int r = 0; r < p; ++r) x.noalias() += model.lag_coeffs[r] * history[r];
        if (!x.allFinite()) {
            const int bad = t >= 0 ? t : t + discard;
            throw StabilityError("simulate: non-finite sample at index " +
                                 std::to_string(bad) + (t < 0 ? " (burn-in)" : ""));
        }
        for (int r = p - 1; r > 0; --r) history[r].swap(history[r - 1]);
        history[0] = x;
        if (t >= 0) out.values.row(t) = x.transpose();
    }
    return out;
}

}  // namespace marnet
