#pragma once

#include "json.hpp"

#include "qme/objects.hpp"

namespace qme {

// Interchange schema. A matrix is {"dim": n, "entries": [[re, im], ...]}
// row-major. Standalone files wrap matrices in a naming key ("rho",
// "effect"); nested positions hold bare matrices. Schema violations throw
// JsonError; domain violations surface from the validators.

nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::json state_to_json(const State& s);
State state_from_json(const nlohmann::json& j);

nlohmann::json effect_to_json(const Effect& e);
Effect effect_from_json(const nlohmann::json& j);

nlohmann::json observable_to_json(const Observable& o);
Observable observable_from_json(const nlohmann::json& j);

nlohmann::json operation_to_json(const Operation& o);
Operation operation_from_json(const nlohmann::json& j);

nlohmann::json instrument_to_json(const Instrument& i);
Instrument instrument_from_json(const nlohmann::json& j);

nlohmann::json model_to_json(const MeasurementModel& m);
MeasurementModel model_from_json(const nlohmann::json& j);

}  // namespace qme
