#include "marnet/covariance.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

#include "marnet/model.hpp"

namespace marnet {

namespace {

constexpr double kFixedPointTol = 1e-13;
constexpr int kFixedPointMaxIter = 100000;
// Above this state dimension the (Np)^2 x (Np)^2 kronecker system is not
// worth forming; the fixed-point iteration costs two Np x Np products per
// sweep.
constexpr int kAutoKroneckerLimit = 48;

Eigen::MatrixXd embedded_noise(const MarModel& model) {
    const int n = model.n_nodes, p = model.order;
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n * p, n * p);
    s.topLeftCorner(n, n) = model.noise_cov;
    return s;
}

Eigen::MatrixXd solve_kronecker(const Eigen::MatrixXd& comp, const Eigen::MatrixXd& noise) {
    const int d = static_cast<int>(comp.rows());
    Eigen::MatrixXd system = Eigen::MatrixXd::Identity(d * d, d * d);
    // I - A (x) A, with (x) the Kronecker product in column-major vec order
    for (int bc = 0; bc < d; ++bc)
        for (int br = 0; br < d; ++br)
            system.block(br * d, bc * d, d, d) -= comp(br, bc) * comp;
    const Eigen::VectorXd vec_noise = noise.reshaped();
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
    const Eigen::VectorXd vec_gamma = lu.solve(vec_noise);
    const double rel = (system * vec_gamma - vec_noise).norm() / std::max(1.0, vec_noise.norm());
    if (!vec_gamma.allFinite() || rel > 1e-8)
        throw NumericError("stationary_covariance: near-singular kronecker system");
    return vec_gamma.reshaped(d, d);
}

Eigen::MatrixXd solve_fixed_point(const Eigen::MatrixXd& comp, const Eigen::MatrixXd& noise) {
    Eigen::MatrixXd gamma = noise;
    for (int iter = 0; iter < kFixedPointMaxIter; ++iter) {
        Eigen::MatrixXd next = comp * gamma * comp.transpose() + noise;
        const double change = (next - gamma).norm();
        gamma.swap(next);
        if (change <= kFixedPointTol * std::max(1.0, gamma.norm())) return gamma;
    }
    throw NumericError("stationary_covariance: fixed-point iteration did not converge");
}

}  // namespace

Eigen::MatrixXd StationaryCovariance::gamma(int tau) const {
    const int abs_tau = std::abs(tau);
    if (abs_tau >= order)
        throw ValidationError("StationaryCovariance: lag " + std::to_string(tau) +
                              " outside stored range");
    if (tau >= 0) return lag_covs[abs_tau];
    return lag_covs[abs_tau].transpose();
}

StationaryCovariance stationary_covariance(const MarModel& model, CovarianceMethod method) {
    const auto stab = is_stable(model);
    if (!stab.stable)
        throw StabilityError("stationary_covariance: model unstable (spectral radius " +
                             std::to_string(stab.spectral_radius) + ")");
    const Eigen::MatrixXd comp = companion(model);
    const Eigen::MatrixXd noise = embedded_noise(model);

    if (method == CovarianceMethod::auto_select)
        method = comp.rows() <= kAutoKroneckerLimit ? CovarianceMethod::kronecker
                                                    : CovarianceMethod::fixed_point;

    StationaryCovariance cov;
    cov.n_nodes = model.n_nodes;
    cov.order = model.order;
    cov.block_toeplitz = method == CovarianceMethod::kronecker
                             ? solve_kronecker(comp, noise)
                             : solve_fixed_point(comp, noise);
    // exact symmetry; the solves are symmetric only up to roundoff
    cov.block_toeplitz = ((cov.block_toeplitz + cov.block_toeplitz.transpose()) / 2.0).eval();

    const int n = model.n_nodes;
    cov.lag_covs.reserve(model.order);
    for (int tau = 0; tau < model.order; ++tau)
        cov.lag_covs.push_back(cov.block_toeplitz.block(0, tau * n, n, n));
    return cov;
}

double lyapunov_residual(const MarModel& model, const StationaryCovariance& cov) {
    const Eigen::MatrixXd comp = companion(model);
    const Eigen::MatrixXd noise = embedded_noise(model);
    const Eigen::MatrixXd& gamma = cov.block_toeplitz;
    return (gamma - comp * gamma * comp.transpose() - noise).norm() /
           std::max(1.0, gamma.norm());
}

Eigen::MatrixXd sub_cov(const StationaryCovariance& cov,
                        const std::vector<int>& rows,
                        const std::vector<int>& cols) {
    if (rows.empty() || cols.empty())
        throw ValidationError("sub_cov: empty node set");
    for (int v : rows)
        if (v < 0 || v >= cov.n_nodes) throw ValidationError("sub_cov: node index out of range");
    for (int v : cols)
        if (v < 0 || v >= cov.n_nodes) throw ValidationError("sub_cov: node index out of range");

    const int p = cov.order;
    Eigen::MatrixXd out(rows.size() * p, cols.size() * p);
    for (std::size_t ri = 0; ri < rows.size(); ++ri)
        for (std::size_t ci = 0; ci < cols.size(); ++ci)
            for (int a = 0; a < p; ++a)
                for (int b = 0; b < p; ++b)
                    out(ri * p + a, ci * p + b) = cov.gamma(b - a)(rows[ri], cols[ci]);
    return out;
}

Eigen::MatrixXd PredictorMatrix::block(int k) const {
    const int p = static_cast<int>(stacked.cols());
    for (std::size_t idx = 0; idx < conditioning.size(); ++idx)
        if (conditioning[idx] == k)
            return stacked.middleRows(static_cast<int>(idx) * p, p);
    throw ValidationError("PredictorMatrix: node not in conditioning set");
}

PredictorMatrix predictor_matrix(const StationaryCovariance& cov,
                                 const std::vector<int>& parents, int j) {
    if (parents.empty())
        throw ValidationError("predictor_matrix: empty conditioning set");
    const Eigen::MatrixXd r_ss = sub_cov(cov, parents, parents);
    const Eigen::MatrixXd r_sj = sub_cov(cov, parents, {j});

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(r_ss);
    if (eig.info() != Eigen::Success)
        throw NumericError("predictor_matrix: eigendecomposition of R_{S,S} failed");
    const double min_eig = eig.eigenvalues().minCoeff();
    const double max_eig = eig.eigenvalues().maxCoeff();
    if (min_eig <= 1e-12 * std::max(1.0, max_eig))
        throw NumericError("predictor_matrix: R_{S,S} singular (smallest eigenvalue " +
                           std::to_string(min_eig) + ")");

    PredictorMatrix out;
    out.target = j;
    out.conditioning = parents;
    out.stacked = eig.eigenvectors() *
                  eig.eigenvalues().cwiseInverse().asDiagonal() *
                  eig.eigenvectors().transpose() * r_sj;
    out.condition = max_eig / min_eig;
    return out;
}

std::pair<MarModel, NormalizationTransform> normalize_model(
    const MarModel& model, const StationaryCovariance& cov) {
    const Eigen::VectorXd powers = cov.lag_covs[0].diagonal();
    if ((powers.array() <= 0.0).any())
        throw ValidationError("normalize_model: zero node power");
    const Eigen::VectorXd scale = powers.cwiseSqrt();

    MarModel out = model;
    for (int r = 0; r < model.order; ++r)
        out.lag_coeffs[r] = scale.cwiseInverse().asDiagonal() * model.lag_coeffs[r] *
                            scale.asDiagonal();
    out.noise_cov = scale.cwiseInverse().asDiagonal() * model.noise_cov *
                    scale.cwiseInverse().asDiagonal();
    // similarity scaling can leave 1e-17-size asymmetry
    out.noise_cov = ((out.noise_cov + out.noise_cov.transpose()) / 2.0).eval();
    return {out, NormalizationTransform{powers}};
}

}  // namespace marnet
