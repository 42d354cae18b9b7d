#include "phn/phn.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "phn/rng.hpp"

namespace phn {

PhnMode phn_mode_from_name(const std::string& name) {
    if (name == "full") {
        return PhnMode::Full;
    }
    if (name == "vqc") {
        return PhnMode::VqcOnly;
    }
    if (name == "mlp") {
        return PhnMode::MlpOnly;
    }
    throw std::invalid_argument("unknown mode: " + name);
}

std::string phn_mode_name(PhnMode mode) {
    switch (mode) {
    case PhnMode::Full:
        return "full";
    case PhnMode::VqcOnly:
        return "vqc";
    case PhnMode::MlpOnly:
        return "mlp";
    }
    throw std::logic_error("phn_mode_name: unknown mode");
}

void PhnModel::validate() const {
    const std::size_t m = combiner.size();
    if (m == 0) {
        throw std::invalid_argument("PhnModel: no outputs");
    }
    if (vqc.observables.size() != m || mlp.output_dim() != m) {
        throw std::invalid_argument(
            "PhnModel: observable count, MLP output dim and combiner pair "
            "count must agree");
    }
    if (vqc.num_features != mlp.input_dim) {
        throw std::invalid_argument(
            "PhnModel: circuit feature count must match MLP input dim");
    }
    if (vqc_theta.size() != vqc.num_parameters) {
        throw std::invalid_argument(
            "PhnModel: theta length must match circuit parameter count");
    }
}

namespace {

bool vqc_active(PhnMode mode) { return mode != PhnMode::MlpOnly; }
bool mlp_active(PhnMode mode) { return mode != PhnMode::VqcOnly; }

} // namespace

std::size_t parameter_view_size(const PhnModel& model) {
    std::size_t n = 0;
    if (vqc_active(model.mode)) {
        n += model.vqc.num_parameters;
    }
    if (mlp_active(model.mode)) {
        n += model.mlp.parameter_count();
    }
    // One combiner scalar per output per active branch.
    n += model.num_outputs() *
         (static_cast<std::size_t>(vqc_active(model.mode)) +
          static_cast<std::size_t>(mlp_active(model.mode)));
    return n;
}

std::vector<ParamGroup> parameter_groups(const PhnModel& model) {
    std::vector<ParamGroup> groups;
    groups.reserve(parameter_view_size(model));
    if (vqc_active(model.mode)) {
        groups.insert(groups.end(), model.vqc.num_parameters,
                      ParamGroup::VqcTheta);
    }
    if (mlp_active(model.mode)) {
        groups.insert(groups.end(), model.mlp.parameter_count(),
                      ParamGroup::MlpWeights);
    }
    const std::size_t per_output =
        static_cast<std::size_t>(vqc_active(model.mode)) +
        static_cast<std::size_t>(mlp_active(model.mode));
    groups.insert(groups.end(), model.num_outputs() * per_output,
                  ParamGroup::Combiner);
    return groups;
}

std::vector<double> flatten_parameters(const PhnModel& model) {
    model.validate();
    std::vector<double> values;
    values.reserve(parameter_view_size(model));
    if (vqc_active(model.mode)) {
        values.insert(values.end(), model.vqc_theta.begin(),
                      model.vqc_theta.end());
    }
    if (mlp_active(model.mode)) {
        for (const DenseLayer& layer : model.mlp.layers) {
            values.insert(values.end(), layer.weights.begin(),
                          layer.weights.end());
            values.insert(values.end(), layer.biases.begin(),
                          layer.biases.end());
        }
    }
    for (const CombinerWeights& pair : model.combiner) {
        if (vqc_active(model.mode)) {
            values.push_back(pair.s_q);
        }
        if (mlp_active(model.mode)) {
            values.push_back(pair.s_c);
        }
    }
    return values;
}

void assign_parameters(PhnModel& model, std::span<const double> values) {
    model.validate();
    if (values.size() != parameter_view_size(model)) {
        throw std::invalid_argument(
            "assign_parameters: value count does not match view size");
    }
    std::size_t pos = 0;
    if (vqc_active(model.mode)) {
        for (double& theta : model.vqc_theta) {
            theta = values[pos++];
        }
    }
    if (mlp_active(model.mode)) {
        for (DenseLayer& layer : model.mlp.layers) {
            for (double& w : layer.weights) {
                w = values[pos++];
            }
            for (double& b : layer.biases) {
                b = values[pos++];
            }
        }
    }
    for (CombinerWeights& pair : model.combiner) {
        if (vqc_active(model.mode)) {
            pair.s_q = values[pos++];
        }
        if (mlp_active(model.mode)) {
            pair.s_c = values[pos++];
        }
    }
}

std::pair<std::size_t, std::size_t> group_span(const PhnModel& model,
                                               ParamGroup group) {
    const bool vqc_on = vqc_active(model.mode);
    const bool mlp_on = mlp_active(model.mode);
    const std::size_t theta_len = vqc_on ? model.vqc.num_parameters : 0;
    const std::size_t mlp_len = mlp_on ? model.mlp.parameter_count() : 0;
    switch (group) {
    case ParamGroup::VqcTheta:
        if (!vqc_on) {
            throw std::invalid_argument(
                "group_span: circuit parameters inactive in mlp-only mode");
        }
        return {0, theta_len};
    case ParamGroup::MlpWeights:
        if (!mlp_on) {
            throw std::invalid_argument(
                "group_span: MLP parameters inactive in vqc-only mode");
        }
        return {theta_len, theta_len + mlp_len};
    case ParamGroup::Combiner:
        return {theta_len + mlp_len, parameter_view_size(model)};
    }
    throw std::logic_error("group_span: unknown group");
}

std::vector<double> phn_forward(const PhnModel& model,
                                std::span<const double> x) {
    model.validate();
    if (x.size() != model.num_features()) {
        throw std::invalid_argument("phn_forward: feature count mismatch");
    }
    const std::size_t m = model.num_outputs();
    std::vector<double> vqc_out(m, 0.0);
    std::vector<double> mlp_out(m, 0.0);
    if (vqc_active(model.mode)) {
        vqc_out = run_circuit(model.vqc, model.vqc_theta, x);
    }
    if (mlp_active(model.mode)) {
        mlp_out = mlp_forward(model.mlp, x).output;
    }
    std::vector<double> out(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        switch (model.mode) {
        case PhnMode::Full:
            out[i] = model.combiner[i].s_c * mlp_out[i] +
                     model.combiner[i].s_q * vqc_out[i];
            break;
        case PhnMode::VqcOnly:
            out[i] = model.combiner[i].s_q * vqc_out[i];
            break;
        case PhnMode::MlpOnly:
            out[i] = model.combiner[i].s_c * mlp_out[i];
            break;
        }
    }
    return out;
}

PhnGradient phn_gradients(const PhnModel& model, std::span<const double> x,
                          std::span<const double> y_target) {
    model.validate();
    if (x.size() != model.num_features()) {
        throw std::invalid_argument("phn_gradients: feature count mismatch");
    }
    const std::size_t m = model.num_outputs();
    if (y_target.size() != m) {
        throw std::invalid_argument("phn_gradients: target count mismatch");
    }
    const bool vqc_on = vqc_active(model.mode);
    const bool mlp_on = mlp_active(model.mode);

    std::vector<double> vqc_out(m, 0.0);
    std::vector<double> mlp_out(m, 0.0);
    MlpCache cache;
    if (vqc_on) {
        vqc_out = run_circuit(model.vqc, model.vqc_theta, x);
    }
    if (mlp_on) {
        cache = mlp_forward(model.mlp, x);
        mlp_out = cache.output;
    }

    PhnGradient result;
    result.outputs.resize(m);
    std::vector<double> residual(m); // d(loss)/d(o_m) = 2 (o_m - y_m)
    for (std::size_t i = 0; i < m; ++i) {
        const double q = vqc_on ? model.combiner[i].s_q * vqc_out[i] : 0.0;
        const double c = mlp_on ? model.combiner[i].s_c * mlp_out[i] : 0.0;
        result.outputs[i] = q + c;
        const double err = result.outputs[i] - y_target[i];
        result.loss += err * err;
        residual[i] = 2.0 * err;
    }

    result.grads.reserve(parameter_view_size(model));
    if (vqc_on) {
        // d(loss)/d(theta_p) = sum_m residual_m * s_q_m * d q_m / d theta_p
        const std::vector<std::vector<double>> jacobian =
            parameter_shift_jacobian(model.vqc, model.vqc_theta, x);
        for (std::size_t p = 0; p < model.vqc.num_parameters; ++p) {
            double g = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                g += residual[i] * model.combiner[i].s_q * jacobian[p][i];
            }
            result.grads.push_back(g);
        }
    }
    if (mlp_on) {
        std::vector<double> upstream(m);
        for (std::size_t i = 0; i < m; ++i) {
            upstream[i] = residual[i] * model.combiner[i].s_c;
        }
        const MlpGradients mlp_grads =
            mlp_backward(model.mlp, cache, upstream);
        for (std::size_t l = 0; l < model.mlp.layers.size(); ++l) {
            result.grads.insert(result.grads.end(),
                                mlp_grads.weight_grads[l].begin(),
                                mlp_grads.weight_grads[l].end());
            result.grads.insert(result.grads.end(),
                                mlp_grads.bias_grads[l].begin(),
                                mlp_grads.bias_grads[l].end());
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        if (vqc_on) {
            result.grads.push_back(residual[i] * vqc_out[i]); // d/d s_q
        }
        if (mlp_on) {
            result.grads.push_back(residual[i] * mlp_out[i]); // d/d s_c
        }
    }
    return result;
}

double primacy_ratio(const PhnModel& model) {
    if (model.num_outputs() != 1) {
        throw std::invalid_argument(
            "primacy_ratio: defined for single-output models only");
    }
    const double s_q = std::abs(model.combiner[0].s_q);
    const double s_c = std::abs(model.combiner[0].s_c);
    if (s_q == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return s_c / s_q;
}

PhnModel build_reference_architecture(ReferenceExperiment experiment,
                                      std::uint64_t seed) {
    Rng rng(seed);
    PhnModel model;
    model.mode = PhnMode::Full;
    model.combiner = {CombinerWeights{0.5, 0.5}};

    const auto param = [](std::size_t p) { return AngleSource::parameter(p); };
    const auto feat = [](std::size_t n) { return AngleSource::feature(n); };

    if (experiment == ReferenceExperiment::OneD) {
        std::vector<Gate> program{
            Gate::ry(0, param(0)), Gate::rx(0, feat(0)),
            Gate::ry(0, param(1)), Gate::rx(0, feat(0)),
            Gate::ry(0, param(2)),
        };
        model.vqc = VqcModel::make(1, std::move(program),
                                   {Observable::from_string("Z")});
    } else {
        std::vector<Gate> program;
        for (int block = 0; block < 2; ++block) {
            const std::size_t p = 2 * static_cast<std::size_t>(block);
            program.push_back(Gate::ry(0, param(p)));
            program.push_back(Gate::ry(1, param(p + 1)));
            program.push_back(Gate::cnot(0, 1));
            program.push_back(Gate::rx(0, feat(0)));
            program.push_back(Gate::rx(1, feat(1)));
        }
        program.push_back(Gate::ry(0, param(4)));
        program.push_back(Gate::ry(1, param(5)));
        model.vqc = VqcModel::make(2, std::move(program),
                                   {Observable::from_string("ZI")});
    }

    model.vqc_theta.reserve(model.vqc.num_parameters);
    for (std::size_t p = 0; p < model.vqc.num_parameters; ++p) {
        model.vqc_theta.push_back(
            rng.uniform(-std::numbers::pi, std::numbers::pi));
    }

    const std::uint64_t mlp_seed = rng.next_u64();
    const std::vector<std::size_t> layout =
        experiment == ReferenceExperiment::OneD
            ? std::vector<std::size_t>{1, 256, 1}
            : std::vector<std::size_t>{2, 128, 1};
    model.mlp = init_mlp(layout, {Activation::ReLU, Activation::Sigmoid},
                         mlp_seed);
    model.validate();
    return model;
}

} // namespace phn
