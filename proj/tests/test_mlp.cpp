#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "phn/mlp.hpp"
#include "phn/rng.hpp"
#include "support/oracles.hpp"

using namespace phn;

namespace {

// Independent forward pass written as a plain nested loop over explicit
// indices — shares nothing with the library implementation.
std::vector<double> naive_forward(const MlpModel& model,
                                  const std::vector<double>& x) {
    std::vector<double> activations = x;
    for (const DenseLayer& layer : model.layers) {
        std::vector<double> next(layer.out_dim);
        for (std::size_t row = 0; row < layer.out_dim; ++row) {
            double acc = 0.0;
            for (std::size_t col = 0; col < layer.in_dim; ++col) {
                acc += layer.weights[row * layer.in_dim + col] *
                       activations[col];
            }
            acc += layer.biases[row];
            switch (layer.activation) {
            case Activation::ReLU:
                next[row] = std::max(0.0, acc);
                break;
            case Activation::Sigmoid:
                next[row] = 1.0 / (1.0 + std::exp(-acc));
                break;
            case Activation::Identity:
                next[row] = acc;
                break;
            }
        }
        activations = std::move(next);
    }
    return activations;
}

// Flattens model parameters, evaluates sum of squared outputs at the
// perturbed parameters; used as the finite-difference target.
double sq_loss_at(const MlpModel& base, const std::vector<double>& flat,
                  const std::vector<double>& x) {
    MlpModel model = base;
    std::size_t k = 0;
    for (DenseLayer& layer : model.layers) {
        for (double& w : layer.weights) {
            w = flat[k++];
        }
        for (double& b : layer.biases) {
            b = flat[k++];
        }
    }
    const MlpCache cache = mlp_forward(model, x);
    double loss = 0.0;
    for (double o : cache.output) {
        loss += o * o;
    }
    return loss;
}

std::vector<double> flatten(const MlpModel& model) {
    std::vector<double> flat;
    for (const DenseLayer& layer : model.layers) {
        flat.insert(flat.end(), layer.weights.begin(), layer.weights.end());
        flat.insert(flat.end(), layer.biases.begin(), layer.biases.end());
    }
    return flat;
}

} // namespace

TEST_CASE("activation values and derivatives") {
    CHECK(apply_activation(Activation::ReLU, -1.0) == 0.0);
    CHECK(apply_activation(Activation::ReLU, 2.5) == 2.5);
    CHECK(apply_activation(Activation::Sigmoid, 0.0) == 0.5);
    CHECK(apply_activation(Activation::Identity, -3.0) == -3.0);

    CHECK(activation_derivative(Activation::ReLU, -0.1) == 0.0);
    CHECK(activation_derivative(Activation::ReLU, 0.1) == 1.0);
    CHECK(activation_derivative(Activation::Sigmoid, 0.0) == 0.25);
    CHECK(activation_derivative(Activation::Identity, 9.0) == 1.0);

    CHECK(activation_from_name("relu") == Activation::ReLU);
    CHECK(activation_name(Activation::Sigmoid) == "sigmoid");
    CHECK_THROWS(activation_from_name("tanh"));
}

TEST_CASE("init_mlp shapes, bounds and validation") {
    const MlpModel model = init_mlp({1, 256, 1},
                                    {Activation::ReLU, Activation::Sigmoid},
                                    3);
    CHECK(model.input_dim == 1);
    CHECK(model.output_dim() == 1);
    CHECK(model.layers.size() == 2);
    CHECK(model.parameter_count() == 769); // 1*256+256 + 256*1+1
    CHECK(model.layout() == std::vector<std::size_t>{1, 256, 1});

    for (const DenseLayer& layer : model.layers) {
        const double bound = 1.0 / std::sqrt(double(layer.in_dim));
        for (double w : layer.weights) {
            CHECK(std::abs(w) <= bound);
        }
        for (double b : layer.biases) {
            CHECK(b == 0.0);
        }
    }

    CHECK(init_mlp({2, 128, 1}, {Activation::ReLU, Activation::Sigmoid}, 3)
              .parameter_count() == 513);

    CHECK_THROWS(init_mlp({5}, {}, 0));
    CHECK_THROWS(init_mlp({1, 2}, {}, 0)); // missing activation
    CHECK_THROWS(init_mlp({1, 0, 1},
                          {Activation::ReLU, Activation::Sigmoid}, 0));
}

TEST_CASE("init_mlp is deterministic in the seed") {
    const MlpModel a = init_mlp({3, 7, 2},
                                {Activation::ReLU, Activation::Identity}, 11);
    const MlpModel b = init_mlp({3, 7, 2},
                                {Activation::ReLU, Activation::Identity}, 11);
    const MlpModel c = init_mlp({3, 7, 2},
                                {Activation::ReLU, Activation::Identity}, 12);
    CHECK(flatten(a) == flatten(b));
    CHECK(flatten(a) != flatten(c));
}

TEST_CASE("forward pass matches an independent implementation") {
    Rng rng(404);
    for (int trial = 0; trial < 25; ++trial) {
        const std::vector<std::size_t> layout{1 + rng.below(3),
                                              1 + rng.below(8),
                                              1 + rng.below(3)};
        const MlpModel model = init_mlp(
            layout, {Activation::ReLU, Activation::Sigmoid}, rng.next_u64());
        std::vector<double> x(layout.front());
        for (double& v : x) {
            v = rng.uniform(-2.0, 2.0);
        }
        const MlpCache cache = mlp_forward(model, x);
        const std::vector<double> expected = naive_forward(model, x);
        REQUIRE(cache.output.size() == expected.size());
        for (std::size_t i = 0; i < expected.size(); ++i) {
            CHECK(oracles::close(cache.output[i], expected[i], 1e-14, 1e-14));
        }
    }
}

TEST_CASE("forward cache carries per-layer inputs and pre-activations") {
    const MlpModel model = init_mlp({2, 3, 1},
                                    {Activation::ReLU, Activation::Sigmoid},
                                    8);
    const std::vector<double> x{0.4, -1.1};
    const MlpCache cache = mlp_forward(model, x);
    REQUIRE(cache.inputs.size() == 2);
    REQUIRE(cache.pre.size() == 2);
    CHECK(cache.inputs[0] == x);
    CHECK(cache.pre[0].size() == 3);
    CHECK(cache.pre[1].size() == 1);
    // Layer-1 inputs are the activations of layer 0.
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(cache.inputs[1][i] ==
              apply_activation(Activation::ReLU, cache.pre[0][i]));
    }
    CHECK(cache.output[0] ==
          apply_activation(Activation::Sigmoid, cache.pre[1][0]));
}

TEST_CASE("backprop matches finite differences on weights and biases") {
    Rng rng(1234);
    int instances = 0;
    while (instances < 15) {
        const std::vector<std::size_t> layout{2, 5, 2};
        const MlpModel model = init_mlp(
            layout, {Activation::ReLU, Activation::Sigmoid}, rng.next_u64());
        std::vector<double> x{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};

        const MlpCache cache = mlp_forward(model, x);
        // Finite differences cross the ReLU kink when a pre-activation sits
        // within the step size; those instances make the oracle itself
        // invalid, so redraw (deterministically).
        bool near_kink = false;
        for (double pre : cache.pre[0]) {
            near_kink |= std::abs(pre) < 1e-3;
        }
        if (near_kink) {
            continue;
        }
        ++instances;

        // d(sum o^2)/d theta via backprop: output gradient 2*o.
        std::vector<double> out_grad(cache.output.size());
        for (std::size_t i = 0; i < cache.output.size(); ++i) {
            out_grad[i] = 2.0 * cache.output[i];
        }
        const MlpGradients grads = mlp_backward(model, cache, out_grad);

        std::vector<double> analytic;
        for (std::size_t l = 0; l < model.layers.size(); ++l) {
            analytic.insert(analytic.end(), grads.weight_grads[l].begin(),
                            grads.weight_grads[l].end());
            analytic.insert(analytic.end(), grads.bias_grads[l].begin(),
                            grads.bias_grads[l].end());
        }

        const std::vector<double> flat = flatten(model);
        REQUIRE(analytic.size() == flat.size());
        for (std::size_t k = 0; k < flat.size(); ++k) {
            const double fd = oracles::central_diff(
                [&](const std::vector<double>& theta) {
                    return sq_loss_at(model, theta, x);
                },
                flat, k);
            CHECK(oracles::close(analytic[k], fd, 1e-6, 1e-6));
        }
    }
}

TEST_CASE("backprop input gradient matches finite differences") {
    const MlpModel model = init_mlp(
        {2, 4, 1}, {Activation::Sigmoid, Activation::Sigmoid}, 77);
    const std::vector<double> x{0.7, -0.2};
    const MlpCache cache = mlp_forward(model, x);
    const MlpGradients grads =
        mlp_backward(model, cache, std::vector<double>{1.0});

    for (std::size_t j = 0; j < x.size(); ++j) {
        const double fd = oracles::central_diff(
            [&](const std::vector<double>& point) {
                return mlp_forward(model, point).output[0];
            },
            x, j);
        CHECK(oracles::close(grads.input_grad[j], fd, 1e-8, 1e-8));
    }
}

TEST_CASE("mlp_forward and mlp_backward validate dimensions") {
    const MlpModel model = init_mlp({2, 3, 1},
                                    {Activation::ReLU, Activation::Sigmoid},
                                    1);
    CHECK_THROWS(mlp_forward(model, std::vector<double>{1.0}));

    const MlpCache cache = mlp_forward(model, std::vector<double>{1.0, 2.0});
    CHECK_THROWS(mlp_backward(model, cache, std::vector<double>{1.0, 2.0}));

    MlpCache broken = cache;
    broken.pre[0].pop_back();
    CHECK_THROWS(mlp_backward(model, broken, std::vector<double>{1.0}));
}
