#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "phn/circuit.hpp"
#include "phn/mlp.hpp"

namespace phn {

enum class PhnMode { Full, VqcOnly, MlpOnly };

PhnMode phn_mode_from_name(const std::string& name);
std::string phn_mode_name(PhnMode mode);

/// Per-output combiner pair: o_m = s_c * c_m + s_q * q_m.
struct CombinerWeights {
    double s_q = 0.0;
    double s_c = 0.0;
};

/// A circuit branch and an MLP branch fed the same features, linearly
/// combined per output. Single-branch modes keep their scaling weight so a
/// baseline can still reach labels of either sign where its range allows.
struct PhnModel {
    VqcModel vqc;
    std::vector<double> vqc_theta;
    MlpModel mlp;
    std::vector<CombinerWeights> combiner;
    PhnMode mode = PhnMode::Full;

    std::size_t num_outputs() const { return combiner.size(); }
    std::size_t num_features() const { return vqc.num_features; }

    /// Checks the cross-branch shape invariants; throws on violation.
    void validate() const;
};

/// Group tag of one trainable scalar.
enum class ParamGroup { VqcTheta, MlpWeights, Combiner };

/// The flat trainable-parameter view. Ordering: circuit parameters, MLP
/// parameters (per layer: weights row-major, then biases), combiner weights
/// (per output: s_q, then s_c). Only the groups active in the model's mode
/// appear: VqcOnly drops the MLP group and every s_c; MlpOnly drops the
/// circuit group and every s_q.
std::size_t parameter_view_size(const PhnModel& model);
std::vector<ParamGroup> parameter_groups(const PhnModel& model);
std::vector<double> flatten_parameters(const PhnModel& model);
void assign_parameters(PhnModel& model, std::span<const double> values);

/// Index range [begin, end) of a group inside the flat view. Throws if the
/// group is inactive in the model's mode.
std::pair<std::size_t, std::size_t> group_span(const PhnModel& model,
                                               ParamGroup group);

std::vector<double> phn_forward(const PhnModel& model,
                                std::span<const double> x);

/// One evaluation of the squared-error loss and its exact gradient for a
/// single sample: loss = sum_m (o_m - y_m)^2. Gradient entries align with
/// the flat parameter view; circuit entries come from the parameter-shift
/// rule, MLP entries from backpropagation.
struct PhnGradient {
    double loss = 0.0;
    std::vector<double> outputs;
    std::vector<double> grads;
};

PhnGradient phn_gradients(const PhnModel& model, std::span<const double> x,
                          std::span<const double> y_target);

/// r = |s_c| / |s_q| for single-output models; +infinity when s_q == 0.
/// Refuses multi-output models.
double primacy_ratio(const PhnModel& model);

enum class ReferenceExperiment { OneD, TwoD };

/// The two bundled regression architectures.
///
/// OneD: 1-qubit re-uploading circuit RY(t0) RX(x) RY(t1) RX(x) RY(t2)
/// measured in Z (3 circuit parameters), MLP [1,256,1] with ReLU/sigmoid
/// (769 parameters), combiner (0.5, 0.5).
///
/// TwoD: 2-qubit circuit of two blocks [RY(t) on each qubit, CNOT(0->1),
/// RX(x1) on qubit 0, RX(x2) on qubit 1] plus a final RY(t) on each qubit
/// (6 circuit parameters), measured in Z(x)I, MLP [2,128,1] with
/// ReLU/sigmoid (513 parameters), combiner (0.5, 0.5).
PhnModel build_reference_architecture(ReferenceExperiment experiment,
                                      std::uint64_t seed);

} // namespace phn
