#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "phn/phn.hpp"

namespace phn {

/// Adam with the universal constants (beta1 0.9, beta2 0.999, eps 1e-8) and
/// standard bias correction.
struct AdamState {
    std::vector<double> first_moment;
    std::vector<double> second_moment;
    long step_count = 0;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;

    static AdamState for_size(std::size_t n);
};

/// One Adam update, in place:
///   m <- b1 m + (1-b1) g;  v <- b2 v + (1-b2) g^2
///   param -= lr * (m / (1-b1^t)) / (sqrt(v / (1-b2^t)) + eps)
/// Throws std::domain_error on a non-finite gradient entry.
void adam_step(AdamState& state, std::span<double> params,
               std::span<const double> grads,
               std::span<const double> lr_per_entry);
void adam_step(AdamState& state, std::span<double> params,
               std::span<const double> grads, double lr);

struct GroupLearningRates {
    double vqc = 0.01;
    double mlp = 0.001;
    double combiner = 0.001;

    double for_group(ParamGroup group) const;
};

/// Per-group convenience overload; `groups` tags each parameter entry.
void adam_step(AdamState& state, std::span<double> params,
               std::span<const double> grads,
               std::span<const ParamGroup> groups,
               const GroupLearningRates& lrs);

/// Step decay: every `step_every` epochs all rates shrink by `gamma`.
struct LrSchedule {
    GroupLearningRates base;
    double gamma = 1.0;
    int step_every = 1;
};

/// lr(epoch) = base * gamma^floor(epoch / step_every).
GroupLearningRates scheduled_lr(const LrSchedule& schedule, int epoch);

} // namespace phn
