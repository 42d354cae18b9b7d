#include "phn/mlp.hpp"

#include <cmath>
#include <stdexcept>

#include "phn/rng.hpp"

namespace phn {

Activation activation_from_name(const std::string& name) {
    if (name == "relu") {
        return Activation::ReLU;
    }
    if (name == "sigmoid") {
        return Activation::Sigmoid;
    }
    if (name == "identity") {
        return Activation::Identity;
    }
    throw std::invalid_argument("unknown activation: " + name);
}

std::string activation_name(Activation a) {
    switch (a) {
    case Activation::ReLU:
        return "relu";
    case Activation::Sigmoid:
        return "sigmoid";
    case Activation::Identity:
        return "identity";
    }
    throw std::logic_error("activation_name: unknown activation");
}

double apply_activation(Activation a, double t) {
    switch (a) {
    case Activation::ReLU:
        return t > 0.0 ? t : 0.0;
    case Activation::Sigmoid:
        return 1.0 / (1.0 + std::exp(-t));
    case Activation::Identity:
        return t;
    }
    throw std::logic_error("apply_activation: unknown activation");
}

double activation_derivative(Activation a, double pre_activation) {
    switch (a) {
    case Activation::ReLU:
        return pre_activation > 0.0 ? 1.0 : 0.0;
    case Activation::Sigmoid: {
        const double s = 1.0 / (1.0 + std::exp(-pre_activation));
        return s * (1.0 - s);
    }
    case Activation::Identity:
        return 1.0;
    }
    throw std::logic_error("activation_derivative: unknown activation");
}

std::size_t MlpModel::parameter_count() const {
    std::size_t count = 0;
    for (const DenseLayer& layer : layers) {
        count += layer.in_dim * layer.out_dim + layer.out_dim;
    }
    return count;
}

std::vector<std::size_t> MlpModel::layout() const {
    std::vector<std::size_t> dims{input_dim};
    for (const DenseLayer& layer : layers) {
        dims.push_back(layer.out_dim);
    }
    return dims;
}

MlpModel init_mlp(const std::vector<std::size_t>& layout,
                  const std::vector<Activation>& activations,
                  std::uint64_t seed) {
    if (layout.size() < 2) {
        throw std::invalid_argument("init_mlp: layout needs >= 2 entries");
    }
    if (activations.size() != layout.size() - 1) {
        throw std::invalid_argument(
            "init_mlp: one activation per layer required");
    }
    for (std::size_t dim : layout) {
        if (dim == 0) {
            throw std::invalid_argument("init_mlp: zero-width layer");
        }
    }

    Rng rng(seed);
    MlpModel model;
    model.input_dim = layout.front();
    model.layers.reserve(layout.size() - 1);
    for (std::size_t l = 0; l + 1 < layout.size(); ++l) {
        DenseLayer layer;
        layer.in_dim = layout[l];
        layer.out_dim = layout[l + 1];
        layer.activation = activations[l];
        const double bound = 1.0 / std::sqrt(static_cast<double>(layer.in_dim));
        layer.weights.reserve(layer.in_dim * layer.out_dim);
        for (std::size_t i = 0; i < layer.in_dim * layer.out_dim; ++i) {
            layer.weights.push_back(rng.uniform(-bound, bound));
        }
        layer.biases.assign(layer.out_dim, 0.0);
        model.layers.push_back(std::move(layer));
    }
    return model;
}

MlpCache mlp_forward(const MlpModel& model, std::span<const double> x) {
    if (x.size() != model.input_dim) {
        throw std::invalid_argument("mlp_forward: input dimension mismatch");
    }
    MlpCache cache;
    cache.inputs.reserve(model.layers.size());
    cache.pre.reserve(model.layers.size());

    std::vector<double> current(x.begin(), x.end());
    for (const DenseLayer& layer : model.layers) {
        cache.inputs.push_back(current);
        std::vector<double> pre(layer.out_dim, 0.0);
        for (std::size_t i = 0; i < layer.out_dim; ++i) {
            double z = layer.biases[i];
            const double* row = layer.weights.data() + i * layer.in_dim;
            for (std::size_t j = 0; j < layer.in_dim; ++j) {
                z += row[j] * current[j];
            }
            pre[i] = z;
        }
        current.resize(layer.out_dim);
        for (std::size_t i = 0; i < layer.out_dim; ++i) {
            current[i] = apply_activation(layer.activation, pre[i]);
        }
        cache.pre.push_back(std::move(pre));
    }
    cache.output = std::move(current);
    return cache;
}

MlpGradients mlp_backward(const MlpModel& model, const MlpCache& cache,
                          std::span<const double> output_gradient) {
    if (cache.inputs.size() != model.layers.size() ||
        cache.pre.size() != model.layers.size()) {
        throw std::invalid_argument(
            "mlp_backward: cache does not match model");
    }
    if (output_gradient.size() != model.output_dim()) {
        throw std::invalid_argument(
            "mlp_backward: output gradient dimension mismatch");
    }
    for (std::size_t l = 0; l < model.layers.size(); ++l) {
        if (cache.inputs[l].size() != model.layers[l].in_dim ||
            cache.pre[l].size() != model.layers[l].out_dim) {
            throw std::invalid_argument(
                "mlp_backward: cache does not match model");
        }
    }

    MlpGradients grads;
    grads.weight_grads.resize(model.layers.size());
    grads.bias_grads.resize(model.layers.size());

    std::vector<double> upstream(output_gradient.begin(),
                                 output_gradient.end());
    for (std::size_t l = model.layers.size(); l-- > 0;) {
        const DenseLayer& layer = model.layers[l];
        // delta = upstream (*) act'(pre)
        std::vector<double> delta(layer.out_dim);
        for (std::size_t i = 0; i < layer.out_dim; ++i) {
            delta[i] = upstream[i] *
                       activation_derivative(layer.activation, cache.pre[l][i]);
        }
        std::vector<double>& dw = grads.weight_grads[l];
        dw.assign(layer.in_dim * layer.out_dim, 0.0);
        const std::vector<double>& input = cache.inputs[l];
        for (std::size_t i = 0; i < layer.out_dim; ++i) {
            for (std::size_t j = 0; j < layer.in_dim; ++j) {
                dw[i * layer.in_dim + j] = delta[i] * input[j];
            }
        }
        grads.bias_grads[l] = delta;

        std::vector<double> next(layer.in_dim, 0.0);
        for (std::size_t i = 0; i < layer.out_dim; ++i) {
            const double* row = layer.weights.data() + i * layer.in_dim;
            for (std::size_t j = 0; j < layer.in_dim; ++j) {
                next[j] += row[j] * delta[i];
            }
        }
        upstream = std::move(next);
    }
    grads.input_grad = std::move(upstream);
    return grads;
}

} // namespace phn
