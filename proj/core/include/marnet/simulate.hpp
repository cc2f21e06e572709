#pragma once

#include <cstdint>

#include "marnet/types.hpp"

namespace marnet {

/// Initial condition of a simulation run.
struct SimInit {
    enum class Kind { stationary, zero, burn_in };
    Kind kind = Kind::stationary;
    int burn_in_samples = -1;  // burn_in only; -1 means 500 * order

    static SimInit stationary() { return {Kind::stationary, -1}; }
    static SimInit zero() { return {Kind::zero, -1}; }
    static SimInit burn_in(int samples = -1) { return {Kind::burn_in, samples}; }
};

/// Runs x(t) = sum_r A_r x(t-r) + u(t) with Gaussian innovations.
/// stationary: the initial p-lag state is drawn from N(0, Gamma) via a
/// symmetric eigenfactorization of the stationary covariance (requires a
/// stable model). zero: history starts at 0. burn_in: zero start, the first
/// k samples are discarded. Deterministic given the seed; throws
/// StabilityError naming the first bad index if the run diverges.
TimeSeries simulate(const MarModel& model, int n_samples, std::uint64_t seed,
                    const SimInit& init = SimInit::stationary());

}  // namespace marnet
