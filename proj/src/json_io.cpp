#include "qme/json_io.hpp"

namespace qme {

namespace {

const nlohmann::json& field(const nlohmann::json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw JsonError(std::string("missing field '") + key + "'");
    return j.at(key);
}

}  // namespace

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
    nlohmann::json entries = nlohmann::json::array();
    for (const ComplexScalar& z : m.entries()) entries.push_back({z.real(), z.imag()});
    return {{"dim", m.dim()}, {"entries", std::move(entries)}};
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
    const nlohmann::json& dim_j = field(j, "dim");
    if (!dim_j.is_number_integer()) throw JsonError("'dim' must be an integer");
    const int dim = dim_j.get<int>();
    const nlohmann::json& entries = field(j, "entries");
    if (!entries.is_array()) throw JsonError("'entries' must be an array");
    std::vector<ComplexScalar> e;
    e.reserve(entries.size());
    for (const auto& pair : entries) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
            throw JsonError("matrix entries must be [re, im] pairs");
        e.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    if (dim < 1 || e.size() != static_cast<std::size_t>(dim) * dim)
        throw JsonError("entry count " + std::to_string(e.size()) + " does not match dim " + std::to_string(dim));
    return ComplexMatrix(dim, std::move(e));
}

nlohmann::json state_to_json(const State& s) { return {{"rho", matrix_to_json(s.matrix())}}; }

State state_from_json(const nlohmann::json& j) { return validate_state(matrix_from_json(field(j, "rho"))); }

nlohmann::json effect_to_json(const Effect& e) { return {{"effect", matrix_to_json(e.matrix())}}; }

Effect effect_from_json(const nlohmann::json& j) { return validate_effect(matrix_from_json(field(j, "effect"))); }

nlohmann::json observable_to_json(const Observable& o) {
    nlohmann::json outcomes = nlohmann::json::array();
    for (const auto& out : o.outcomes())
        outcomes.push_back({{"label", out.label}, {"effect", matrix_to_json(out.effect.matrix())}});
    return {{"outcomes", std::move(outcomes)}};
}

Observable observable_from_json(const nlohmann::json& j) {
    const nlohmann::json& outcomes = field(j, "outcomes");
    if (!outcomes.is_array()) throw JsonError("'outcomes' must be an array");
    std::vector<ObservableOutcome> parsed;
    for (const auto& out : outcomes) {
        const nlohmann::json& label = field(out, "label");
        if (!label.is_string()) throw JsonError("outcome 'label' must be a string");
        parsed.push_back({label.get<std::string>(), validate_effect(matrix_from_json(field(out, "effect")))});
    }
    return validate_observable(std::move(parsed));
}

nlohmann::json operation_to_json(const Operation& o) {
    nlohmann::json kraus = nlohmann::json::array();
    for (const ComplexMatrix& k : o.kraus()) kraus.push_back(matrix_to_json(k));
    return {{"kraus", std::move(kraus)}};
}

Operation operation_from_json(const nlohmann::json& j) {
    const nlohmann::json& kraus = field(j, "kraus");
    if (!kraus.is_array()) throw JsonError("'kraus' must be an array");
    std::vector<ComplexMatrix> ks;
    for (const auto& k : kraus) ks.push_back(matrix_from_json(k));
    return validate_operation(std::move(ks));
}

nlohmann::json instrument_to_json(const Instrument& i) {
    nlohmann::json outcomes = nlohmann::json::array();
    for (const auto& out : i.outcomes())
        outcomes.push_back({{"label", out.label}, {"operation", operation_to_json(out.operation)}});
    return {{"outcomes", std::move(outcomes)}};
}

Instrument instrument_from_json(const nlohmann::json& j) {
    const nlohmann::json& outcomes = field(j, "outcomes");
    if (!outcomes.is_array()) throw JsonError("'outcomes' must be an array");
    std::vector<InstrumentOutcome> parsed;
    for (const auto& out : outcomes) {
        const nlohmann::json& label = field(out, "label");
        if (!label.is_string()) throw JsonError("outcome 'label' must be a string");
        parsed.push_back({label.get<std::string>(), operation_from_json(field(out, "operation"))});
    }
    return validate_instrument(std::move(parsed));
}

nlohmann::json model_to_json(const MeasurementModel& m) {
    return {{"dim_h", m.dim_h()},
            {"dim_k", m.dim_k()},
            {"nu", operation_to_json(m.nu())},
            {"sigma", matrix_to_json(m.sigma().matrix())},
            {"probe", observable_to_json(m.probe())}};
}

MeasurementModel model_from_json(const nlohmann::json& j) {
    const nlohmann::json& dh = field(j, "dim_h");
    const nlohmann::json& dk = field(j, "dim_k");
    if (!dh.is_number_integer() || !dk.is_number_integer())
        throw JsonError("'dim_h' and 'dim_k' must be integers");
    return validate_measurement_model(dh.get<int>(), dk.get<int>(), operation_from_json(field(j, "nu")),
                                      validate_state(matrix_from_json(field(j, "sigma"))),
                                      observable_from_json(field(j, "probe")));
}

}  // namespace qme
