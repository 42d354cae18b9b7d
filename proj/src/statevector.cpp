#include "phn/statevector.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace phn {

namespace {

constexpr std::size_t kMaxQubits = 20;

// 2x2 unitary of a resolved single-qubit gate.
struct Mat2 {
    Complex a, b, c, d; // [[a, b], [c, d]]
};

Mat2 rotation_matrix(GateKind kind, double angle) {
    const double half = 0.5 * angle;
    const double cos_h = std::cos(half);
    const double sin_h = std::sin(half);
    switch (kind) {
    case GateKind::RX:
        return {Complex(cos_h, 0), Complex(0, -sin_h), Complex(0, -sin_h),
                Complex(cos_h, 0)};
    case GateKind::RY:
        return {Complex(cos_h, 0), Complex(-sin_h, 0), Complex(sin_h, 0),
                Complex(cos_h, 0)};
    case GateKind::RZ:
        return {Complex(cos_h, -sin_h), Complex(0, 0), Complex(0, 0),
                Complex(cos_h, sin_h)};
    default:
        throw std::logic_error("rotation_matrix: not a rotation kind");
    }
}

void apply_single_qubit(StateVector& state, std::size_t qubit, const Mat2& m) {
    // Qubit q lives at bit (K-1-q) of the basis index.
    const std::size_t bit = state.num_qubits - 1 - qubit;
    const std::size_t stride = std::size_t{1} << bit;
    auto& amp = state.amplitudes;
    for (std::size_t base = 0; base < amp.size(); base += 2 * stride) {
        for (std::size_t offset = 0; offset < stride; ++offset) {
            const std::size_t i0 = base + offset;
            const std::size_t i1 = i0 + stride;
            const Complex a0 = amp[i0];
            const Complex a1 = amp[i1];
            amp[i0] = m.a * a0 + m.b * a1;
            amp[i1] = m.c * a0 + m.d * a1;
        }
    }
}

void apply_cnot(StateVector& state, std::size_t control, std::size_t target) {
    const std::size_t control_bit = state.num_qubits - 1 - control;
    const std::size_t target_bit = state.num_qubits - 1 - target;
    const std::size_t control_mask = std::size_t{1} << control_bit;
    const std::size_t target_mask = std::size_t{1} << target_bit;
    auto& amp = state.amplitudes;
    for (std::size_t i = 0; i < amp.size(); ++i) {
        if ((i & control_mask) && !(i & target_mask)) {
            std::swap(amp[i], amp[i | target_mask]);
        }
    }
}

void check_qubit(const StateVector& state, std::size_t qubit,
                 const char* role) {
    if (qubit >= state.num_qubits) {
        throw std::out_of_range(std::string("apply_gate: ") + role +
                                " qubit index out of range");
    }
}

} // namespace

double StateVector::norm_squared() const {
    double total = 0.0;
    for (const Complex& a : amplitudes) {
        total += std::norm(a);
    }
    return total;
}

StateVector new_state(std::size_t num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw std::invalid_argument(
            "new_state: num_qubits must be in [1, 20]");
    }
    StateVector state;
    state.num_qubits = num_qubits;
    state.amplitudes.assign(std::size_t{1} << num_qubits, Complex(0, 0));
    state.amplitudes[0] = Complex(1, 0);
    return state;
}

bool is_rotation(GateKind kind) {
    return kind == GateKind::RX || kind == GateKind::RY ||
           kind == GateKind::RZ;
}

std::string gate_kind_name(GateKind kind) {
    switch (kind) {
    case GateKind::RX:
        return "RX";
    case GateKind::RY:
        return "RY";
    case GateKind::RZ:
        return "RZ";
    case GateKind::H:
        return "H";
    case GateKind::CNOT:
        return "CNOT";
    }
    throw std::logic_error("gate_kind_name: unknown kind");
}

AngleSource AngleSource::feature(std::size_t index) {
    return {Kind::Feature, index, 0.0};
}

AngleSource AngleSource::parameter(std::size_t index) {
    return {Kind::Parameter, index, 0.0};
}

AngleSource AngleSource::fixed(double value) {
    return {Kind::Fixed, 0, value};
}

namespace {
Gate make_rotation(GateKind kind, std::size_t target, AngleSource source) {
    Gate g;
    g.kind = kind;
    g.target = target;
    g.angle_source = source;
    return g;
}
} // namespace

Gate Gate::rx(std::size_t target, AngleSource source) {
    return make_rotation(GateKind::RX, target, source);
}

Gate Gate::ry(std::size_t target, AngleSource source) {
    return make_rotation(GateKind::RY, target, source);
}

Gate Gate::rz(std::size_t target, AngleSource source) {
    return make_rotation(GateKind::RZ, target, source);
}

Gate Gate::h(std::size_t target) {
    Gate g;
    g.kind = GateKind::H;
    g.target = target;
    return g;
}

Gate Gate::cnot(std::size_t control, std::size_t target) {
    if (control == target) {
        throw std::invalid_argument("cnot: control must differ from target");
    }
    Gate g;
    g.kind = GateKind::CNOT;
    g.target = target;
    g.control = control;
    return g;
}

void apply_gate_in_place(StateVector& state, const Gate& gate,
                         std::optional<double> angle) {
    check_qubit(state, gate.target, "target");
    if (is_rotation(gate.kind)) {
        if (!angle.has_value()) {
            throw std::invalid_argument(
                "apply_gate: rotation gate requires an angle");
        }
        apply_single_qubit(state, gate.target,
                           rotation_matrix(gate.kind, *angle));
        return;
    }
    if (angle.has_value()) {
        throw std::invalid_argument(
            "apply_gate: non-rotation gate takes no angle");
    }
    if (gate.kind == GateKind::H) {
        constexpr double inv_sqrt2 = 0.70710678118654752440;
        apply_single_qubit(state, gate.target,
                           {Complex(inv_sqrt2, 0), Complex(inv_sqrt2, 0),
                            Complex(inv_sqrt2, 0), Complex(-inv_sqrt2, 0)});
        return;
    }
    // CNOT
    if (!gate.control.has_value()) {
        throw std::invalid_argument("apply_gate: CNOT requires a control");
    }
    check_qubit(state, *gate.control, "control");
    if (*gate.control == gate.target) {
        throw std::invalid_argument(
            "apply_gate: CNOT control must differ from target");
    }
    apply_cnot(state, *gate.control, gate.target);
}

StateVector apply_gate(const StateVector& state, const Gate& gate,
                       std::optional<double> angle) {
    StateVector out = state;
    apply_gate_in_place(out, gate, angle);
    return out;
}

Observable::Observable(std::vector<PauliFactor> f) : factors(std::move(f)) {
    bool has_z = false;
    for (PauliFactor factor : factors) {
        has_z |= (factor == PauliFactor::Z);
    }
    if (!has_z) {
        throw std::invalid_argument(
            "Observable: at least one factor must be Z");
    }
}

Observable Observable::from_string(const std::string& s) {
    std::vector<PauliFactor> factors;
    factors.reserve(s.size());
    for (char c : s) {
        if (c == 'Z') {
            factors.push_back(PauliFactor::Z);
        } else if (c == 'I') {
            factors.push_back(PauliFactor::I);
        } else {
            throw std::invalid_argument(
                "Observable: factors must be 'Z' or 'I'");
        }
    }
    return Observable(std::move(factors));
}

std::string Observable::to_string() const {
    std::string s;
    s.reserve(factors.size());
    for (PauliFactor factor : factors) {
        s.push_back(factor == PauliFactor::Z ? 'Z' : 'I');
    }
    return s;
}

double Observable::eigenvalue(std::size_t basis_index) const {
    const std::size_t k = factors.size();
    double eig = 1.0;
    for (std::size_t q = 0; q < k; ++q) {
        if (factors[q] == PauliFactor::Z &&
            (basis_index >> (k - 1 - q)) & 1) {
            eig = -eig;
        }
    }
    return eig;
}

double expectation(const StateVector& state, const Observable& obs) {
    if (obs.num_qubits() != state.num_qubits) {
        throw std::invalid_argument(
            "expectation: observable dimension does not match state");
    }
    Complex acc(0, 0);
    for (std::size_t i = 0; i < state.dim(); ++i) {
        acc += std::conj(state.amplitudes[i]) * obs.eigenvalue(i) *
               state.amplitudes[i];
    }
    if (std::abs(acc.imag()) >= 1e-12) {
        throw std::runtime_error(
            "expectation: quadratic form has a non-real residue");
    }
    return acc.real();
}

} // namespace phn
