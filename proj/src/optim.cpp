#include "phn/optim.hpp"

#include <cmath>
#include <stdexcept>

namespace phn {

AdamState AdamState::for_size(std::size_t n) {
    AdamState state;
    state.first_moment.assign(n, 0.0);
    state.second_moment.assign(n, 0.0);
    return state;
}

void adam_step(AdamState& state, std::span<double> params,
               std::span<const double> grads,
               std::span<const double> lr_per_entry) {
    const std::size_t n = params.size();
    if (grads.size() != n || lr_per_entry.size() != n ||
        state.first_moment.size() != n || state.second_moment.size() != n) {
        throw std::invalid_argument("adam_step: length mismatch");
    }
    for (double g : grads) {
        if (!std::isfinite(g)) {
            throw std::domain_error("adam_step: non-finite gradient");
        }
    }
    state.step_count += 1;
    const double bc1 =
        1.0 - std::pow(state.beta1, static_cast<double>(state.step_count));
    const double bc2 =
        1.0 - std::pow(state.beta2, static_cast<double>(state.step_count));
    for (std::size_t i = 0; i < n; ++i) {
        const double g = grads[i];
        state.first_moment[i] =
            state.beta1 * state.first_moment[i] + (1.0 - state.beta1) * g;
        state.second_moment[i] =
            state.beta2 * state.second_moment[i] + (1.0 - state.beta2) * g * g;
        const double m_hat = state.first_moment[i] / bc1;
        const double v_hat = state.second_moment[i] / bc2;
        params[i] -=
            lr_per_entry[i] * m_hat / (std::sqrt(v_hat) + state.epsilon);
    }
}

void adam_step(AdamState& state, std::span<double> params,
               std::span<const double> grads, double lr) {
    const std::vector<double> lrs(params.size(), lr);
    adam_step(state, params, grads, lrs);
}

double GroupLearningRates::for_group(ParamGroup group) const {
    switch (group) {
    case ParamGroup::VqcTheta:
        return vqc;
    case ParamGroup::MlpWeights:
        return mlp;
    case ParamGroup::Combiner:
        return combiner;
    }
    throw std::logic_error("for_group: unknown group");
}

void adam_step(AdamState& state, std::span<double> params,
               std::span<const double> grads,
               std::span<const ParamGroup> groups,
               const GroupLearningRates& lrs) {
    if (groups.size() != params.size()) {
        throw std::invalid_argument("adam_step: group tag length mismatch");
    }
    std::vector<double> lr_per_entry(params.size());
    for (std::size_t i = 0; i < params.size(); ++i) {
        lr_per_entry[i] = lrs.for_group(groups[i]);
    }
    adam_step(state, params, grads, lr_per_entry);
}

GroupLearningRates scheduled_lr(const LrSchedule& schedule, int epoch) {
    if (epoch < 0) {
        throw std::invalid_argument("scheduled_lr: negative epoch");
    }
    if (schedule.gamma <= 0.0 || schedule.gamma > 1.0) {
        throw std::invalid_argument("scheduled_lr: gamma must be in (0, 1]");
    }
    if (schedule.step_every < 1) {
        throw std::invalid_argument("scheduled_lr: step_every must be >= 1");
    }
    const double decay = std::pow(
        schedule.gamma, static_cast<double>(epoch / schedule.step_every));
    GroupLearningRates lrs = schedule.base;
    lrs.vqc *= decay;
    lrs.mlp *= decay;
    lrs.combiner *= decay;
    return lrs;
}

} // namespace phn
