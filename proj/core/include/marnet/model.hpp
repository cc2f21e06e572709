#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "marnet/types.hpp"

namespace marnet {

/// First-order embedding of a p-th order model: top block row holds
/// [A_1 ... A_p], an identity sits below-left, zeros elsewhere. The
/// structural blocks are exact, not approximate.
Eigen::MatrixXd companion(const MarModel& model);

struct StabilityResult {
    bool stable = false;
    double spectral_radius = 0.0;
};

/// A model is stable iff the companion spectral radius is below 1 - margin.
StabilityResult is_stable(const MarModel& model, double margin = 0.0);

/// Draws coefficients i.i.d. N(0, coeff_std^2) on the pattern's edges (all
/// lags), leaves everything else exactly zero, and resamples until the model
/// is stable. Deterministic given the seed; throws StabilityError after
/// max_attempts unstable draws.
MarModel draw_random_model(const SparsityPattern& pattern, int order,
                           double coeff_std, Eigen::MatrixXd noise_cov,
                           std::uint64_t seed, int max_attempts = 1000);

/// Random sparse pattern: every node gets its self-edge plus up to
/// max_parents - 1 distinct other parents (uniform count, uniform choice).
SparsityPattern random_pattern(int n_nodes, int max_parents, std::uint64_t seed);

/// Reference networks. "winterhalder" and "parallel" are fully specified
/// models (noise_cov = I); "circle" is a pattern only -- its coefficients
/// must be drawn with draw_random_model.
std::variant<MarModel, SparsityPattern> builtin_network(const std::string& name);

}  // namespace marnet
