#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace phn {

using Complex = std::complex<double>;

/// Dense statevector over 2^K basis states of a K-qubit register.
///
/// Qubit 0 maps to the most significant bit of the basis index, so a ket
/// written |q0 q1 ... q_{K-1}> reads left to right and the tensor product
/// of per-qubit operators follows the same order (factor 0 acts on qubit 0).
struct StateVector {
    std::size_t num_qubits = 0;
    std::vector<Complex> amplitudes;

    std::size_t dim() const { return amplitudes.size(); }

    /// Sum of squared amplitude magnitudes; 1 for any physical state.
    double norm_squared() const;
};

/// Prepares |0>^{(x)K}. Rejects num_qubits outside [1, 20] (resource guard).
StateVector new_state(std::size_t num_qubits);

enum class GateKind { RX, RY, RZ, H, CNOT };

bool is_rotation(GateKind kind);
std::string gate_kind_name(GateKind kind);

/// Where a rotation gate takes its angle from when a circuit is run:
/// a feature of the input vector, a trainable parameter, or a constant.
struct AngleSource {
    enum class Kind { Feature, Parameter, Fixed };

    Kind kind = Kind::Fixed;
    std::size_t index = 0; // Feature / Parameter
    double value = 0.0;    // Fixed

    static AngleSource feature(std::size_t index);
    static AngleSource parameter(std::size_t index);
    static AngleSource fixed(double value);

    bool operator==(const AngleSource&) const = default;
};

/// One instruction of a gate program. Rotation kinds carry an angle source;
/// CNOT carries a control. Pauli rotations follow RP(phi) = exp(-i phi P / 2).
struct Gate {
    GateKind kind = GateKind::H;
    std::size_t target = 0;
    std::optional<std::size_t> control; // CNOT only
    std::optional<AngleSource> angle_source; // rotation kinds only

    static Gate rx(std::size_t target, AngleSource source);
    static Gate ry(std::size_t target, AngleSource source);
    static Gate rz(std::size_t target, AngleSource source);
    static Gate h(std::size_t target);
    static Gate cnot(std::size_t control, std::size_t target);

    bool operator==(const Gate&) const = default;
};

/// Applies the gate's unitary. Rotation gates require an explicit angle
/// (radians); H and CNOT require none. Norm is preserved.
void apply_gate_in_place(StateVector& state, const Gate& gate,
                         std::optional<double> angle = std::nullopt);
StateVector apply_gate(const StateVector& state, const Gate& gate,
                       std::optional<double> angle = std::nullopt);

enum class PauliFactor { I, Z };

/// Tensor product of per-qubit {Z, I} factors; factor q acts on qubit q.
/// At least one factor must be Z.
struct Observable {
    std::vector<PauliFactor> factors;

    explicit Observable(std::vector<PauliFactor> f);

    /// Builds from a string like "ZI" (one letter per qubit).
    static Observable from_string(const std::string& s);
    std::string to_string() const;

    std::size_t num_qubits() const { return factors.size(); }

    /// Eigenvalue (+1/-1) of the given basis state.
    double eigenvalue(std::size_t basis_index) const;

    bool operator==(const Observable&) const = default;
};

/// <psi|M|psi> for a diagonal Pauli-Z/I observable. Always in [-1, 1] for a
/// normalized state; the imaginary part of the quadratic form is checked to
/// be below 1e-12 as a diagnostic.
double expectation(const StateVector& state, const Observable& obs);

} // namespace phn
