#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "phn/circuit.hpp"
#include "phn/phn.hpp"
#include "phn/rng.hpp"
#include "support/oracles.hpp"

using namespace phn;

namespace {

// RY(p0) RX(f0) RY(p1) RX(f0) RY(p2) on one qubit, measured in Z: the
// re-uploading circuit used by the bundled 1D architecture.
VqcModel one_d_circuit() {
    return VqcModel::make(
        1,
        {
            Gate::ry(0, AngleSource::parameter(0)),
            Gate::rx(0, AngleSource::feature(0)),
            Gate::ry(0, AngleSource::parameter(1)),
            Gate::rx(0, AngleSource::feature(0)),
            Gate::ry(0, AngleSource::parameter(2)),
        },
        {Observable::from_string("Z")});
}

} // namespace

TEST_CASE("VqcModel::make derives dense parameter and feature counts") {
    const VqcModel model = one_d_circuit();
    CHECK(model.num_parameters == 3);
    CHECK(model.num_features == 1);
    CHECK(model.num_qubits == 1);
    CHECK(model.program.size() == 5);
}

TEST_CASE("VqcModel::make rejects bad wiring") {
    const Observable z = Observable::from_string("Z");
    const Observable zz = Observable::from_string("ZZ");

    // Target out of range.
    CHECK_THROWS(VqcModel::make(1, {Gate::h(1)}, {z}));
    // Sparse parameter indices (0 missing).
    CHECK_THROWS(VqcModel::make(
        1, {Gate::ry(0, AngleSource::parameter(1))}, {z}));
    // Sparse feature indices.
    CHECK_THROWS(VqcModel::make(
        1, {Gate::rx(0, AngleSource::feature(2))}, {z}));
    // Observable width mismatch.
    CHECK_THROWS(VqcModel::make(1, {Gate::h(0)}, {zz}));
    // CNOT control out of range.
    CHECK_THROWS(VqcModel::make(2, {Gate::cnot(2, 0)}, {zz}));
    // Dense indices in scrambled order are fine.
    CHECK_NOTHROW(VqcModel::make(1,
                                 {
                                     Gate::ry(0, AngleSource::parameter(1)),
                                     Gate::ry(0, AngleSource::parameter(0)),
                                 },
                                 {z}));
}

TEST_CASE("run_circuit validates span lengths") {
    const VqcModel model = one_d_circuit();
    const std::vector<double> params{0.1, 0.2, 0.3};
    const std::vector<double> features{0.5};
    CHECK_NOTHROW(run_circuit(model, params, features));
    CHECK_THROWS(run_circuit(model, {params.data(), 2}, features));
    CHECK_THROWS(run_circuit(model, params, {}));
}

TEST_CASE("1D circuit with zero parameters reduces to <Z> = cos(2x)") {
    // RY(0) is the identity, so the program is RX(x) RX(x) = RX(2x) and
    // <Z> = cos(2x).
    const VqcModel model = one_d_circuit();
    const std::vector<double> params{0.0, 0.0, 0.0};
    for (double x : {0.0, 0.3, 0.7, 1.9, -2.4}) {
        const std::vector<double> features{x};
        const std::vector<double> out = run_circuit(model, params, features);
        REQUIRE(out.size() == 1);
        CHECK(out[0] == doctest::Approx(std::cos(2 * x)).epsilon(1e-12));
    }
}

TEST_CASE("circuit outputs match the dense matrix-product oracle") {
    Rng rng(20240803);
    for (int trial = 0; trial < 30; ++trial) {
        const auto random = oracles::random_circuit(rng);
        const std::vector<double> fast =
            run_circuit(random.model, random.params, random.features);
        const std::vector<double> dense = oracles::dense_circuit_expectations(
            random.model, random.params, random.features);
        REQUIRE(fast.size() == dense.size());
        for (std::size_t m = 0; m < fast.size(); ++m) {
            CHECK(oracles::close(fast[m], dense[m], 1e-10));
        }
    }
}

TEST_CASE("parameter-shift gradients match central finite differences") {
    Rng rng(99);
    int instances = 0;
    while (instances < 20) {
        const auto random = oracles::random_circuit(rng);
        if (random.model.num_parameters == 0) {
            continue;
        }
        ++instances;
        for (std::size_t p = 0; p < random.model.num_parameters; ++p) {
            const std::vector<double> analytic = parameter_shift_grad(
                random.model, random.params, random.features, p);
            for (std::size_t m = 0; m < analytic.size(); ++m) {
                const double fd = oracles::central_diff(
                    [&](const std::vector<double>& theta) {
                        return run_circuit(random.model, theta,
                                           random.features)[m];
                    },
                    random.params, p);
                CHECK(oracles::close(analytic[m], fd, 1e-6));
            }
        }
    }
}

TEST_CASE("a parameter reused across gates follows the product rule") {
    // RY(p0) RX(0.4) RY(p0): two occurrences of the same parameter.
    const VqcModel model = VqcModel::make(
        1,
        {
            Gate::ry(0, AngleSource::parameter(0)),
            Gate::rx(0, AngleSource::fixed(0.4)),
            Gate::ry(0, AngleSource::parameter(0)),
        },
        {Observable::from_string("Z")});
    const std::vector<double> params{0.8};
    const std::vector<double> analytic =
        parameter_shift_grad(model, params, {}, 0);
    const double fd = oracles::central_diff(
        [&](const std::vector<double>& theta) {
            return run_circuit(model, theta, {})[0];
        },
        params, 0);
    CHECK(oracles::close(analytic[0], fd, 1e-6));
    // Sanity: with two occurrences the gradient is the sum of two shifted
    // differences, not a single one.
    CHECK(std::abs(analytic[0]) > 1e-3);
}

TEST_CASE("jacobian rows agree with per-parameter gradients") {
    Rng rng(5);
    const auto random = [&] {
        for (;;) {
            auto candidate = oracles::random_circuit(rng);
            if (candidate.model.num_parameters >= 2) {
                return candidate;
            }
        }
    }();
    const auto jacobian = parameter_shift_jacobian(random.model, random.params,
                                                   random.features);
    REQUIRE(jacobian.size() == random.model.num_parameters);
    for (std::size_t p = 0; p < jacobian.size(); ++p) {
        const std::vector<double> row = parameter_shift_grad(
            random.model, random.params, random.features, p);
        REQUIRE(jacobian[p].size() == row.size());
        for (std::size_t m = 0; m < row.size(); ++m) {
            CHECK(jacobian[p][m] == row[m]);
        }
    }
}

TEST_CASE("parameter_shift_grad rejects an out-of-range index") {
    const VqcModel model = one_d_circuit();
    const std::vector<double> params{0.1, 0.2, 0.3};
    const std::vector<double> features{0.5};
    CHECK_THROWS(parameter_shift_grad(model, params, features, 3));
}

TEST_CASE("the bundled reference circuits match their published shapes") {
    const PhnModel one_d = build_reference_architecture(
        ReferenceExperiment::OneD, 42);
    CHECK(one_d.vqc.num_qubits == 1);
    CHECK(one_d.vqc.num_parameters == 3);
    CHECK(one_d.vqc.num_features == 1);
    CHECK(one_d.vqc.observables.size() == 1);
    CHECK(one_d.vqc.observables[0].to_string() == "Z");

    const PhnModel two_d = build_reference_architecture(
        ReferenceExperiment::TwoD, 42);
    CHECK(two_d.vqc.num_qubits == 2);
    CHECK(two_d.vqc.num_parameters == 6);
    CHECK(two_d.vqc.num_features == 2);
    CHECK(two_d.vqc.observables[0].to_string() == "ZI");
}
