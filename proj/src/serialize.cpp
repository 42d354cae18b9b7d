#include "phn/serialize.hpp"

#include <fstream>
#include <stdexcept>

namespace phn {

using nlohmann::json;

namespace {

GateKind gate_kind_from_name(const std::string& name) {
    if (name == "RX") {
        return GateKind::RX;
    }
    if (name == "RY") {
        return GateKind::RY;
    }
    if (name == "RZ") {
        return GateKind::RZ;
    }
    if (name == "H") {
        return GateKind::H;
    }
    if (name == "CNOT") {
        return GateKind::CNOT;
    }
    throw std::invalid_argument("unknown gate kind: " + name);
}

json angle_source_to_json(const AngleSource& source) {
    switch (source.kind) {
    case AngleSource::Kind::Feature:
        return {{"type", "feature"}, {"index", source.index}};
    case AngleSource::Kind::Parameter:
        return {{"type", "parameter"}, {"index", source.index}};
    case AngleSource::Kind::Fixed:
        return {{"type", "fixed"}, {"value", source.value}};
    }
    throw std::logic_error("angle_source_to_json: unknown kind");
}

AngleSource angle_source_from_json(const json& doc) {
    const std::string type = doc.at("type").get<std::string>();
    if (type == "feature") {
        return AngleSource::feature(doc.at("index").get<std::size_t>());
    }
    if (type == "parameter") {
        return AngleSource::parameter(doc.at("index").get<std::size_t>());
    }
    if (type == "fixed") {
        return AngleSource::fixed(doc.at("value").get<double>());
    }
    throw std::invalid_argument("unknown angle source type: " + type);
}

} // namespace

json circuit_to_json(const VqcModel& model) {
    json gates = json::array();
    for (const Gate& gate : model.program) {
        json g{{"kind", gate_kind_name(gate.kind)}, {"target", gate.target}};
        if (gate.control.has_value()) {
            g["control"] = *gate.control;
        }
        if (gate.angle_source.has_value()) {
            g["angle_source"] = angle_source_to_json(*gate.angle_source);
        }
        gates.push_back(std::move(g));
    }
    json observables = json::array();
    for (const Observable& obs : model.observables) {
        observables.push_back(obs.to_string());
    }
    return {{"num_qubits", model.num_qubits},
            {"gates", std::move(gates)},
            {"observables", std::move(observables)}};
}

VqcModel circuit_from_json(const json& doc) {
    std::vector<Gate> program;
    for (const json& g : doc.at("gates")) {
        Gate gate;
        gate.kind = gate_kind_from_name(g.at("kind").get<std::string>());
        gate.target = g.at("target").get<std::size_t>();
        if (g.contains("control")) {
            gate.control = g.at("control").get<std::size_t>();
        }
        if (g.contains("angle_source")) {
            gate.angle_source = angle_source_from_json(g.at("angle_source"));
        }
        program.push_back(gate);
    }
    std::vector<Observable> observables;
    for (const json& obs : doc.at("observables")) {
        observables.push_back(Observable::from_string(obs.get<std::string>()));
    }
    return VqcModel::make(doc.at("num_qubits").get<std::size_t>(),
                          std::move(program), std::move(observables));
}

json mlp_to_json(const MlpModel& model) {
    json activations = json::array();
    json weights = json::array();
    json biases = json::array();
    for (const DenseLayer& layer : model.layers) {
        activations.push_back(activation_name(layer.activation));
        weights.push_back(layer.weights);
        biases.push_back(layer.biases);
    }
    return {{"layout", model.layout()},
            {"activations", std::move(activations)},
            {"weights", std::move(weights)},
            {"biases", std::move(biases)}};
}

MlpModel mlp_from_json(const json& doc) {
    const auto layout = doc.at("layout").get<std::vector<std::size_t>>();
    if (layout.size() < 2) {
        throw std::invalid_argument("mlp_from_json: layout needs >= 2 dims");
    }
    MlpModel model;
    model.input_dim = layout.front();
    const json& activations = doc.at("activations");
    const json& weights = doc.at("weights");
    const json& biases = doc.at("biases");
    const std::size_t num_layers = layout.size() - 1;
    if (activations.size() != num_layers || weights.size() != num_layers ||
        biases.size() != num_layers) {
        throw std::invalid_argument(
            "mlp_from_json: per-layer array lengths disagree with layout");
    }
    for (std::size_t l = 0; l < num_layers; ++l) {
        DenseLayer layer;
        layer.in_dim = layout[l];
        layer.out_dim = layout[l + 1];
        layer.activation =
            activation_from_name(activations[l].get<std::string>());
        layer.weights = weights[l].get<std::vector<double>>();
        layer.biases = biases[l].get<std::vector<double>>();
        if (layer.weights.size() != layer.in_dim * layer.out_dim ||
            layer.biases.size() != layer.out_dim) {
            throw std::invalid_argument(
                "mlp_from_json: weight shape does not match layout");
        }
        model.layers.push_back(std::move(layer));
    }
    return model;
}

json phn_to_json(const PhnModel& model, std::uint64_t seed) {
    model.validate();
    json s_q = json::array();
    json s_c = json::array();
    for (const CombinerWeights& pair : model.combiner) {
        s_q.push_back(pair.s_q);
        s_c.push_back(pair.s_c);
    }
    return {{"format", "phn-checkpoint"},
            {"version", 1},
            {"mode", phn_mode_name(model.mode)},
            {"seed", seed},
            {"vqc", circuit_to_json(model.vqc)},
            {"vqc_theta", model.vqc_theta},
            {"mlp", mlp_to_json(model.mlp)},
            {"combiner", {{"s_q", std::move(s_q)}, {"s_c", std::move(s_c)}}}};
}

PhnModel phn_from_json(const json& doc) {
    if (doc.value("format", "") != "phn-checkpoint") {
        throw std::invalid_argument("phn_from_json: not a model checkpoint");
    }
    PhnModel model;
    model.vqc = circuit_from_json(doc.at("vqc"));
    model.vqc_theta = doc.at("vqc_theta").get<std::vector<double>>();
    model.mlp = mlp_from_json(doc.at("mlp"));
    model.mode = phn_mode_from_name(doc.at("mode").get<std::string>());
    const auto s_q = doc.at("combiner").at("s_q").get<std::vector<double>>();
    const auto s_c = doc.at("combiner").at("s_c").get<std::vector<double>>();
    if (s_q.size() != s_c.size()) {
        throw std::invalid_argument(
            "phn_from_json: combiner arrays disagree in length");
    }
    for (std::size_t i = 0; i < s_q.size(); ++i) {
        model.combiner.push_back({s_q[i], s_c[i]});
    }
    model.validate();
    return model;
}

std::uint64_t checkpoint_seed(const json& doc) {
    return doc.value("seed", std::uint64_t{0});
}

void save_checkpoint(const std::string& path, const PhnModel& model,
                     std::uint64_t seed) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("save_checkpoint: cannot write " + path);
    }
    out << phn_to_json(model, seed).dump(2) << '\n';
}

PhnModel load_checkpoint(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("load_checkpoint: cannot read " + path);
    }
    json doc;
    in >> doc;
    return phn_from_json(doc);
}

} // namespace phn
