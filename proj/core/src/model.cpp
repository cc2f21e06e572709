#include "marnet/model.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <utility>

#include "marnet/rng.hpp"

namespace marnet {

SparsityPattern::SparsityPattern(int n_nodes, std::set<Edge> edges)
    : n_nodes_(n_nodes), edges_(std::move(edges)) {
    if (n_nodes_ <= 0) throw ValidationError("SparsityPattern: n_nodes must be positive");
    for (const auto& [i, j] : edges_) {
        if (i < 0 || i >= n_nodes_ || j < 0 || j >= n_nodes_)
            throw ValidationError("SparsityPattern: edge index out of range");
    }
}

void SparsityPattern::add(int i, int j) {
    if (i < 0 || i >= n_nodes_ || j < 0 || j >= n_nodes_)
        throw ValidationError("SparsityPattern: edge index out of range");
    edges_.insert({i, j});
}

std::vector<int> SparsityPattern::parents(int i) const {
    std::vector<int> out;
    for (const auto& [ii, j] : edges_)
        if (ii == i) out.push_back(j);
    std::sort(out.begin(), out.end());
    return out;
}

MarModel MarModel::zeros(int n_nodes, int order) {
    if (n_nodes <= 0 || order <= 0)
        throw ValidationError("MarModel: n_nodes and order must be positive");
    MarModel m;
    m.n_nodes = n_nodes;
    m.order = order;
    m.lag_coeffs.assign(order, Eigen::MatrixXd::Zero(n_nodes, n_nodes));
    m.noise_cov = Eigen::MatrixXd::Identity(n_nodes, n_nodes);
    return m;
}

Eigen::VectorXd MarModel::coeff_block(int i, int j) const {
    Eigen::VectorXd block(order);
    for (int r = 0; r < order; ++r) block(r) = lag_coeffs[r](i, j);
    return block;
}

SparsityPattern MarModel::support() const {
    std::set<Edge> edges;
    for (int i = 0; i < n_nodes; ++i)
        for (int j = 0; j < n_nodes; ++j)
            for (int r = 0; r < order; ++r)
                if (lag_coeffs[r](i, j) != 0.0) {
                    edges.insert({i, j});
                    break;
                }
    return SparsityPattern(n_nodes, std::move(edges));
}

std::vector<int> MarModel::parents(int i) const {
    std::vector<int> out;
    for (int j = 0; j < n_nodes; ++j)
        for (int r = 0; r < order; ++r)
            if (lag_coeffs[r](i, j) != 0.0) {
                out.push_back(j);
                break;
            }
    return out;
}

void MarModel::validate() const {
    if (n_nodes <= 0 || order <= 0)
        throw ValidationError("MarModel: n_nodes and order must be positive");
    if (static_cast<int>(lag_coeffs.size()) != order)
        throw ValidationError("MarModel: expected " + std::to_string(order) +
                              " lag matrices, got " + std::to_string(lag_coeffs.size()));
    for (const auto& a : lag_coeffs)
        if (a.rows() != n_nodes || a.cols() != n_nodes)
            throw ValidationError("MarModel: lag matrix shape mismatch");
    if (noise_cov.rows() != n_nodes || noise_cov.cols() != n_nodes)
        throw ValidationError("MarModel: noise_cov shape mismatch");
    if ((noise_cov - noise_cov.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw ValidationError("MarModel: noise_cov is not symmetric");
    Eigen::LLT<Eigen::MatrixXd> llt(noise_cov);
    if (llt.info() != Eigen::Success)
        throw ValidationError("MarModel: noise_cov is not positive definite");
}

void TimeSeries::validate() const {
    if (!values.allFinite())
        throw ValidationError("TimeSeries: non-finite entries");
}

Eigen::MatrixXd companion(const MarModel& model) {
    model.validate();
    const int n = model.n_nodes, p = model.order;
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n * p, n * p);
    for (int r = 0; r < p; ++r)
        comp.block(0, r * n, n, n) = model.lag_coeffs[r];
    if (p > 1)
        comp.block(n, 0, n * (p - 1), n * (p - 1)) =
            Eigen::MatrixXd::Identity(n * (p - 1), n * (p - 1));
    return comp;
}

StabilityResult is_stable(const MarModel& model, double margin) {
    const Eigen::MatrixXd comp = companion(model);
    Eigen::EigenSolver<Eigen::MatrixXd> solver(comp, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw NumericError("is_stable: eigenvalue computation failed");
    const double radius = solver.eigenvalues().cwiseAbs().maxCoeff();
    return {radius < 1.0 - margin, radius};
}

MarModel draw_random_model(const SparsityPattern& pattern, int order,
                           double coeff_std, Eigen::MatrixXd noise_cov,
                           std::uint64_t seed, int max_attempts) {
    if (coeff_std <= 0.0) throw ValidationError("draw_random_model: coeff_std must be positive");
    if (order <= 0) throw ValidationError("draw_random_model: order must be positive");
    Rng rng(seed);
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        MarModel m = MarModel::zeros(pattern.n_nodes(), order);
        m.noise_cov = noise_cov;
        for (const auto& [i, j] : pattern.edges())
            for (int r = 0; r < order; ++r)
                m.lag_coeffs[r](i, j) = coeff_std * rng.normal();
        if (is_stable(m).stable) return m;
    }
    throw StabilityError("draw_random_model: no stable draw in " +
                         std::to_string(max_attempts) + " attempts");
}

SparsityPattern random_pattern(int n_nodes, int max_parents, std::uint64_t seed) {
    if (max_parents < 1 || max_parents > n_nodes)
        throw ValidationError("random_pattern: max_parents out of range");
    Rng rng(seed);
    std::set<Edge> edges;
    for (int i = 0; i < n_nodes; ++i) {
        edges.insert({i, i});
        const int extra = rng.uniform_int(0, max_parents - 1);
        std::vector<int> others;
        for (int j = 0; j < n_nodes; ++j)
            if (j != i) others.push_back(j);
        // partial Fisher-Yates for the first `extra` positions
        for (int k = 0; k < extra; ++k) {
            const int pick = rng.uniform_int(k, static_cast<int>(others.size()) - 1);
            std::swap(others[k], others[pick]);
            edges.insert({i, others[k]});
        }
    }
    return SparsityPattern(n_nodes, std::move(edges));
}

namespace {

MarModel winterhalder_model() {
    MarModel m = MarModel::zeros(4, 5);
    // lag index is 0-based: lag_coeffs[r] holds delay r+1
    m.lag_coeffs[0](0, 0) = 0.8;
    m.lag_coeffs[3](0, 1) = 0.65;
    m.lag_coeffs[0](1, 1) = 0.6;
    m.lag_coeffs[4](1, 3) = 0.6;
    m.lag_coeffs[2](2, 2) = 0.5;
    m.lag_coeffs[0](2, 0) = -0.6;
    m.lag_coeffs[3](2, 1) = 0.4;
    m.lag_coeffs[0](3, 3) = 1.2;
    m.lag_coeffs[1](3, 3) = -0.7;
    return m;
}

MarModel parallel_model() {
    MarModel m = MarModel::zeros(7, 4);
    for (int r = 0; r < 4; ++r) {
        for (int i = 0; i < 7; ++i)
            m.lag_coeffs[r](i, i) = (i == 1) ? 0.2 : 0.05;
        for (int k = 2; k <= 5; ++k) {
            m.lag_coeffs[r](k, 1) = 0.15;  // node 2 drives nodes 3..6
            m.lag_coeffs[r](0, k) = 0.15;  // nodes 3..6 drive node 1
        }
    }
    return m;
}

SparsityPattern circle_pattern() {
    std::set<Edge> edges;
    for (int i = 0; i < 4; ++i) edges.insert({i, i});
    edges.insert({1, 0});
    edges.insert({2, 1});
    edges.insert({3, 2});
    edges.insert({0, 3});
    return SparsityPattern(4, std::move(edges));
}

}  // namespace

std::variant<MarModel, SparsityPattern> builtin_network(const std::string& name) {
    if (name == "winterhalder") return winterhalder_model();
    if (name == "parallel") return parallel_model();
    if (name == "circle") return circle_pattern();
    throw ValidationError("builtin_network: unknown name '" + name +
                          "' (expected circle, parallel or winterhalder)");
}

}  // namespace marnet
