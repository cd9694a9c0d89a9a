#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

#include "qme/json_io.hpp"
#include "qme/random_objects.hpp"
#include "qme/rng.hpp"
#include "qme/sequential.hpp"

using nlohmann::json;
using qme::ComplexMatrix;

namespace {

// serialize -> text -> parse -> deserialize; the text leg is the lossy one
// in buggy implementations, so round-trips go through dump().
json reparse(const json& j) { return json::parse(j.dump()); }

}  // namespace

TEST_CASE("matrices round-trip through JSON text exactly") {
    qme::Rng rng(11001);
    ComplexMatrix m(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = rng.complex_normal();
    const ComplexMatrix back = qme::matrix_from_json(reparse(qme::matrix_to_json(m)));
    CHECK(back.max_abs_diff(m) == 0.0);
}

TEST_CASE("states, effects, and observables round-trip exactly") {
    qme::Rng rng(11002);
    const qme::State s = qme::random_state(3, 2, rng);
    CHECK(qme::state_from_json(reparse(qme::state_to_json(s))).matrix().max_abs_diff(s.matrix()) == 0.0);

    const qme::Effect e = qme::random_effect(4, rng);
    CHECK(qme::effect_from_json(reparse(qme::effect_to_json(e))).matrix().max_abs_diff(e.matrix()) == 0.0);

    const qme::Observable o = qme::random_observable(3, 3, rng);
    const qme::Observable o2 = qme::observable_from_json(reparse(qme::observable_to_json(o)));
    REQUIRE(o2.size() == o.size());
    for (std::size_t x = 0; x < o.size(); ++x) {
        CHECK(o2.outcomes()[x].label == o.outcomes()[x].label);
        CHECK(o2.outcomes()[x].effect.matrix().max_abs_diff(o.outcomes()[x].effect.matrix()) == 0.0);
    }
}

TEST_CASE("operations, instruments, and models round-trip exactly") {
    qme::Rng rng(11003);
    const qme::Instrument inst = qme::random_instrument(3, 2, 2, rng);
    const qme::Instrument inst2 = qme::instrument_from_json(reparse(qme::instrument_to_json(inst)));
    REQUIRE(inst2.size() == inst.size());
    for (std::size_t x = 0; x < inst.size(); ++x) {
        CHECK(inst2.outcomes()[x].label == inst.outcomes()[x].label);
        const auto& ka = inst.outcomes()[x].operation.kraus();
        const auto& kb = inst2.outcomes()[x].operation.kraus();
        REQUIRE(ka.size() == kb.size());
        for (std::size_t k = 0; k < ka.size(); ++k) CHECK(ka[k].max_abs_diff(kb[k]) == 0.0);
    }

    const qme::Operation op = inst.outcomes()[0].operation;
    const qme::Operation op2 = qme::operation_from_json(reparse(qme::operation_to_json(op)));
    REQUIRE(op2.kraus().size() == op.kraus().size());
    CHECK(op2.kraus()[0].max_abs_diff(op.kraus()[0]) == 0.0);

    const int dh = 2, dk = 2;
    const qme::MeasurementModel m = qme::validate_measurement_model(
        dh, dk, qme::random_instrument(dh * dk, 1, 2, rng).outcomes()[0].operation,
        qme::random_state(dk, dk, rng), qme::random_observable(dk, 2, rng));
    const qme::MeasurementModel m2 = qme::model_from_json(reparse(qme::model_to_json(m)));
    CHECK(m2.dim_h() == dh);
    CHECK(m2.dim_k() == dk);
    CHECK(m2.sigma().matrix().max_abs_diff(m.sigma().matrix()) == 0.0);
    CHECK(m2.probe().size() == m.probe().size());
    CHECK(m2.nu().kraus()[0].max_abs_diff(m.nu().kraus()[0]) == 0.0);
}

TEST_CASE("schema violations throw JsonError") {
    CHECK_THROWS_AS(qme::matrix_from_json(json{{"entries", json::array()}}), qme::JsonError);
    CHECK_THROWS_AS(qme::matrix_from_json(json{{"dim", 2.5}, {"entries", json::array()}}), qme::JsonError);
    CHECK_THROWS_AS(qme::matrix_from_json(json{{"dim", 2}, {"entries", {1.0, 2.0}}}), qme::JsonError);

    // entry count must be dim squared
    json short_m{{"dim", 2}, {"entries", json::array()}};
    short_m["entries"].push_back({1.0, 0.0});
    CHECK_THROWS_AS(qme::matrix_from_json(short_m), qme::JsonError);

    CHECK_THROWS_AS(qme::state_from_json(json{{"wrong", 1}}), qme::JsonError);
    CHECK_THROWS_AS(qme::observable_from_json(json{{"outcomes", 3}}), qme::JsonError);
    CHECK_THROWS_AS(qme::operation_from_json(json{{"kraus", json::object()}}), qme::JsonError);

    json unlabeled{{"outcomes", json::array()}};
    unlabeled["outcomes"].push_back(json{{"effect", qme::matrix_to_json(ComplexMatrix::identity(2))}});
    CHECK_THROWS_AS(qme::observable_from_json(unlabeled), qme::JsonError);
}

TEST_CASE("domain violations surface from the validators, not as JsonError") {
    json not_a_state{{"rho", qme::matrix_to_json(ComplexMatrix::identity(2))}};  // trace 2
    CHECK_THROWS_AS(qme::state_from_json(not_a_state), qme::InvariantViolation);

    ComplexMatrix big = ComplexMatrix::identity(2);
    big *= qme::ComplexScalar{1.5, 0.0};
    CHECK_THROWS_AS(qme::effect_from_json(json{{"effect", qme::matrix_to_json(big)}}),
                    qme::InvariantViolation);
}

TEST_CASE("serialized numbers keep full double precision") {
    // 1/3 and a denormal-adjacent scale both have no short decimal form
    ComplexMatrix m(2);
    m(0, 0) = qme::ComplexScalar{1.0 / 3.0, -2.0 / 7.0};
    m(0, 1) = qme::ComplexScalar{1e-15, 3.0e300};
    m(1, 0) = qme::ComplexScalar{-1.0 / 3.0, 0.1};
    m(1, 1) = qme::ComplexScalar{0.7, 0.0};
    CHECK(qme::matrix_from_json(reparse(qme::matrix_to_json(m))).max_abs_diff(m) == 0.0);
}
