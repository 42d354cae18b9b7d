#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace phn {

enum class Activation { ReLU, Sigmoid, Identity };

Activation activation_from_name(const std::string& name);
std::string activation_name(Activation a);

double apply_activation(Activation a, double t);
double activation_derivative(Activation a, double pre_activation);

/// One fully connected layer: y = act(W x + b), W stored row-major
/// (out_dim x in_dim).
struct DenseLayer {
    std::size_t in_dim = 0;
    std::size_t out_dim = 0;
    std::vector<double> weights; // row-major, weights[i * in_dim + j]
    std::vector<double> biases;
    Activation activation = Activation::Identity;
};

struct MlpModel {
    std::size_t input_dim = 0;
    std::vector<DenseLayer> layers;

    std::size_t output_dim() const {
        return layers.empty() ? 0 : layers.back().out_dim;
    }
    /// Sum of (in*out + out) over layers.
    std::size_t parameter_count() const;
    std::vector<std::size_t> layout() const;
};

/// Builds an MLP with weights uniform on [-1/sqrt(in_dim), +1/sqrt(in_dim)]
/// from a seeded deterministic RNG and zero biases. Identical seeds yield
/// bit-identical models.
MlpModel init_mlp(const std::vector<std::size_t>& layout,
                  const std::vector<Activation>& activations,
                  std::uint64_t seed);

/// Forward-pass record: the input to each layer and each layer's
/// pre-activation, enough to run the backward pass.
struct MlpCache {
    std::vector<std::vector<double>> inputs; // inputs[l] = input of layer l
    std::vector<std::vector<double>> pre;    // pre[l] = W x + b of layer l
    std::vector<double> output;
};

MlpCache mlp_forward(const MlpModel& model, std::span<const double> x);

struct MlpGradients {
    std::vector<std::vector<double>> weight_grads; // row-major, per layer
    std::vector<std::vector<double>> bias_grads;
    std::vector<double> input_grad;
};

/// Exact backpropagation through the cached forward pass.
MlpGradients mlp_backward(const MlpModel& model, const MlpCache& cache,
                          std::span<const double> output_gradient);

} // namespace phn
