#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "doctest.h"

#include "qme/entropy.hpp"
#include "qme/linalg.hpp"
#include "qme/objects.hpp"
#include "qme/random_objects.hpp"
#include "qme/rng.hpp"
#include "qme/sequential.hpp"

using qme::ComplexMatrix;
using qme::ComplexScalar;

namespace {

ComplexMatrix diag(const std::vector<double>& values) {
    ComplexMatrix m(static_cast<int>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = values[i];
    return m;
}

qme::Effect identity_effect(int dim) { return qme::validate_effect(ComplexMatrix::identity(dim)); }

ComplexMatrix scale(const ComplexMatrix& m, double s) {
    ComplexMatrix out = m;
    out *= ComplexScalar{s, 0.0};
    return out;
}

// first component of a "(x,y)" pair label
std::string pair_first(const std::string& label) {
    return label.substr(1, label.find(',') - 1);
}

}  // namespace

TEST_CASE("the Luders product of diag(1,0) and diag(.5,.5) is diag(.5,0)") {
    const qme::Effect a = qme::validate_effect(diag({1.0, 0.0}));
    const qme::Effect b = qme::validate_effect(diag({0.5, 0.5}));
    const qme::Effect ab = qme::sequential_product_effect(qme::luders_operation(a), b);
    CHECK(ab.matrix().max_abs_diff(diag({0.5, 0.0})) <= 1e-12);
}

TEST_CASE("measuring the identity second changes nothing") {
    qme::Rng rng(10001);
    for (int trial = 0; trial < 20; ++trial) {
        const int dim = rng.uniform_int(2, 5);
        const qme::Effect a = qme::random_effect(dim, rng);
        const qme::State alpha = qme::random_state(dim, dim, rng);
        const qme::Effect via_luders = qme::sequential_product_effect(qme::luders_operation(a), identity_effect(dim));
        CHECK(via_luders.matrix().max_abs_diff(a.matrix()) <= 1e-10);
        const qme::Effect via_holevo =
            qme::sequential_product_effect(qme::holevo_operation(a, alpha), identity_effect(dim));
        CHECK(via_holevo.matrix().max_abs_diff(a.matrix()) <= 1e-10);
    }
}

TEST_CASE("operations satisfy the duality tr(I(rho) b) == tr(rho I*(b))") {
    qme::Rng rng(10002);
    for (int trial = 0; trial < 100; ++trial) {
        const int dim = rng.uniform_int(2, 5);
        const qme::Effect a = qme::random_effect(dim, rng);
        const qme::Effect b = qme::random_effect(dim, rng);
        const qme::State rho = qme::random_state(dim, dim, rng);
        const qme::State alpha = qme::random_state(dim, rng.uniform_int(1, dim), rng);
        CAPTURE(trial);
        for (int kind = 0; kind < 2; ++kind) {
            const qme::Operation op = kind == 0 ? qme::luders_operation(a) : qme::holevo_operation(a, alpha);
            CHECK(qme::measured_effect(op).matrix().max_abs_diff(a.matrix()) <= 1e-9);
            const double lhs = qme::real_trace_product(qme::apply_operation(op, rho.matrix()), b.matrix());
            const double rhs =
                qme::real_trace_product(rho.matrix(), qme::sequential_product_effect(op, b).matrix());
            CHECK(std::abs(lhs - rhs) <= 1e-10);
        }
    }
}

TEST_CASE("the dual of the dual restores the original Kraus operators") {
    qme::Rng rng(10003);
    const qme::Instrument inst = qme::random_instrument(3, 2, 2, rng);
    for (const auto& o : inst.outcomes()) {
        const qme::KrausMap dual = qme::dual_operation(o.operation);
        REQUIRE(dual.kraus.size() == o.operation.kraus().size());
        for (std::size_t k = 0; k < dual.kraus.size(); ++k)
            CHECK(qme::adjoint(dual.kraus[k]).max_abs_diff(o.operation.kraus()[k]) == 0.0);
    }
}

TEST_CASE("Holevo operations act as m -> tr(m a) alpha") {
    qme::Rng rng(10004);
    for (int trial = 0; trial < 100; ++trial) {
        const int dim = rng.uniform_int(2, 5);
        const qme::Effect a = qme::random_effect(dim, rng);
        const qme::State alpha = qme::random_state(dim, rng.uniform_int(1, dim), rng);
        const qme::Operation op = qme::holevo_operation(a, alpha);
        ComplexMatrix m(dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) m(i, j) = rng.complex_normal();
        ComplexMatrix want = alpha.matrix();
        want *= qme::trace(m * a.matrix());
        CAPTURE(trial);
        CHECK(qme::apply_operation(op, m).max_abs_diff(want) <= 1e-10 * std::max(1.0, want.max_abs()));
    }
}

TEST_CASE("Luders operations act as m -> sqrt(a) m sqrt(a)") {
    qme::Rng rng(10005);
    const qme::Effect a = qme::random_effect(4, rng);
    const qme::State rho = qme::random_state(4, 4, rng);
    const ComplexMatrix root = qme::psd_sqrt(a.matrix());
    const ComplexMatrix want = root * rho.matrix() * root;
    CHECK(qme::apply_operation(qme::luders_operation(a), rho.matrix()).max_abs_diff(want) <= 1e-12);
}

TEST_CASE("orthogonal sequential products collapse to the zero effect") {
    const qme::Effect a = qme::validate_effect(diag({1.0, 0.0}));
    const qme::Effect b = qme::validate_effect(diag({0.0, 1.0}));
    CHECK_THROWS_AS(qme::sequential_product_effect(qme::luders_operation(a), b), qme::ZeroEffectError);

    const qme::Operation zero = qme::validate_operation({ComplexMatrix(2)});
    CHECK_THROWS_AS(qme::measured_effect(zero), qme::ZeroEffectError);
}

TEST_CASE("Holevo chains multiply down to scaled first effects") {
    qme::Rng rng(10006);
    const int dim = 3;
    const qme::Effect a1 = qme::random_effect(dim, rng);
    const qme::Effect a2 = qme::random_effect(dim, rng);
    const qme::Effect a3 = qme::random_effect(dim, rng);
    const qme::State al1 = qme::random_state(dim, dim, rng);
    const qme::State al2 = qme::random_state(dim, dim, rng);

    CHECK(qme::holevo_chain({a1}, {}).matrix().max_abs_diff(a1.matrix()) == 0.0);

    const double c12 = qme::real_trace_product(al1.matrix(), a2.matrix());
    CHECK(qme::holevo_chain({a1, a2}, {al1}).matrix().max_abs_diff(scale(a1.matrix(), c12)) <= 1e-12);

    const double c23 = qme::real_trace_product(al2.matrix(), a3.matrix());
    CHECK(qme::holevo_chain({a1, a2, a3}, {al1, al2}).matrix().max_abs_diff(scale(a1.matrix(), c12 * c23)) <=
          1e-12);

    CHECK_THROWS_AS(qme::holevo_chain({a1, a2}, {}), qme::DimensionError);
    CHECK_THROWS_AS(qme::holevo_chain({}, {}), qme::DimensionError);

    const qme::State up = qme::validate_state(diag({1.0, 0.0}));
    const qme::Effect down = qme::validate_effect(diag({0.0, 1.0}));
    CHECK_THROWS_AS(qme::holevo_chain({identity_effect(2), down}, {up}), qme::ZeroEffectError);
}

TEST_CASE("chained products predict the probability of the final outcome") {
    qme::Rng rng(10007);
    for (int trial = 0; trial < 50; ++trial) {
        const int dim = rng.uniform_int(2, 4);
        const qme::Effect a1 = qme::random_effect(dim, rng);
        const qme::Effect a2 = qme::random_effect(dim, rng);
        const qme::Effect a3 = qme::random_effect(dim, rng);
        const qme::State rho = qme::random_state(dim, dim, rng);
        CAPTURE(trial);

        // Luders route: nest the products right to left, then compare against
        // pushing the state forward through the first two operations.
        const qme::Operation l1 = qme::luders_operation(a1);
        const qme::Operation l2 = qme::luders_operation(a2);
        const qme::Effect c23 = qme::sequential_product_effect(l2, a3);
        const qme::Effect c123 = qme::sequential_product_effect(l1, c23);
        const ComplexMatrix pushed = qme::apply_operation(l2, qme::apply_operation(l1, rho.matrix()));
        const double lhs = qme::real_trace_product(rho.matrix(), c123.matrix());
        const double rhs = qme::real_trace_product(pushed, a3.matrix());
        CHECK(std::abs(lhs - rhs) <= 1e-9);

        // Holevo route through the closed form.
        const qme::State al1 = qme::random_state(dim, dim, rng);
        const qme::State al2 = qme::random_state(dim, dim, rng);
        const qme::Effect chain = qme::holevo_chain({a1, a2, a3}, {al1, al2});
        const ComplexMatrix hpushed = qme::apply_operation(
            qme::holevo_operation(a2, al2), qme::apply_operation(qme::holevo_operation(a1, al1), rho.matrix()));
        const double hlhs = qme::real_trace_product(rho.matrix(), chain.matrix());
        const double hrhs = qme::real_trace_product(hpushed, a3.matrix());
        CHECK(std::abs(hlhs - hrhs) <= 1e-9);

        // chain entropy factors through the trace coefficients
        const double coeff = qme::real_trace_product(al1.matrix(), a2.matrix()) *
                             qme::real_trace_product(al2.matrix(), a3.matrix());
        const double s_chain = qme::effect_entropy(chain, rho).nats;
        CHECK(std::abs(s_chain - coeff * qme::effect_entropy(a1, rho).nats) <= 1e-9);
    }
}

TEST_CASE("measuring the trivial second observable relabels the first") {
    qme::Rng rng(10008);
    const int dim = 3;
    const qme::Observable a = qme::random_observable(dim, 3, rng);
    std::vector<qme::ObservableOutcome> eye;
    eye.push_back({"I", identity_effect(dim)});
    const qme::Observable b = qme::validate_observable(std::move(eye));

    const qme::ObservableResult r = qme::observable_sequential(a, qme::luders_instrument(a), b);
    CHECK(r.dropped.empty());
    REQUIRE(r.observable.size() == a.size());
    for (std::size_t x = 0; x < a.size(); ++x) {
        CHECK(r.observable.outcomes()[x].label == "(" + a.outcomes()[x].label + ",I)");
        CHECK(r.observable.outcomes()[x].effect.matrix().max_abs_diff(a.outcomes()[x].effect.matrix()) <= 1e-9);
    }
}

TEST_CASE("coarse-graining a sequential measurement over the second outcome recovers the first") {
    qme::Rng rng(10009);
    const int dim = 3;
    const qme::Observable a = qme::random_observable(dim, 2, rng);
    const qme::Observable b = qme::random_observable(dim, 3, rng);
    const qme::ObservableResult ab = qme::observable_sequential(a, qme::luders_instrument(a), b);
    REQUIRE(ab.dropped.empty());

    std::map<std::string, std::string> forget_second;
    for (const std::string& label : ab.observable.labels()) forget_second[label] = pair_first(label);
    const qme::Observable back = qme::coarse_grain(ab.observable, forget_second, a.labels());

    REQUIRE(back.size() == a.size());
    for (std::size_t x = 0; x < a.size(); ++x) {
        CHECK(back.outcomes()[x].label == a.outcomes()[x].label);
        CHECK(back.outcomes()[x].effect.matrix().max_abs_diff(a.outcomes()[x].effect.matrix()) <= 1e-8);
    }
}

TEST_CASE("observable_sequential rejects instruments that measure something else") {
    qme::Rng rng(10010);
    const int dim = 3;
    const qme::Observable a = qme::random_observable(dim, 2, rng);
    const qme::Observable b = qme::random_observable(dim, 2, rng);
    CHECK_THROWS_AS(qme::observable_sequential(a, qme::luders_instrument(b), b), qme::InstrumentMismatchError);

    const qme::Observable three = qme::random_observable(dim, 3, rng);
    CHECK_THROWS_AS(qme::observable_sequential(three, qme::luders_instrument(a), b),
                    qme::InstrumentMismatchError);
}

TEST_CASE("Holevo instruments collapse sequential effects to scaled copies") {
    qme::Rng rng(10011);
    for (int trial = 0; trial < 20; ++trial) {
        const int dim = rng.uniform_int(2, 4);
        const qme::Observable a = qme::random_observable(dim, 2, rng);
        const qme::Observable b = qme::random_observable(dim, 2, rng);
        std::vector<qme::State> alphas;
        for (std::size_t x = 0; x < a.size(); ++x) alphas.push_back(qme::random_state(dim, dim, rng));
        const qme::Instrument inst = qme::holevo_instrument(a, alphas);
        const qme::ObservableResult ab = qme::observable_sequential(a, inst, b);
        REQUIRE(ab.dropped.empty());

        std::size_t i = 0;
        for (std::size_t x = 0; x < a.size(); ++x) {
            for (std::size_t y = 0; y < b.size(); ++y, ++i) {
                const double c = qme::real_trace_product(alphas[x].matrix(), b.outcomes()[y].effect.matrix());
                const ComplexMatrix want = scale(a.outcomes()[x].effect.matrix(), c);
                CHECK(ab.observable.outcomes()[i].effect.matrix().max_abs_diff(want) <= 1e-10);
            }
        }

        // entropy of the pair observable collapses to the entropy of the first
        const qme::State rho = qme::random_state(dim, dim, rng);
        CHECK(std::abs(qme::observable_entropy(ab.observable, rho).nats -
                       qme::observable_entropy(a, rho).nats) <= 1e-9);
    }
}

TEST_CASE("composing with the trivial instrument only relabels") {
    qme::Rng rng(10012);
    const int dim = 3;
    const qme::Instrument inst = qme::random_instrument(dim, 2, 2, rng);
    std::vector<qme::InstrumentOutcome> idle;
    idle.push_back({"id", qme::validate_operation({ComplexMatrix::identity(dim)})});
    const qme::Instrument identity_inst = qme::validate_instrument(std::move(idle));

    const qme::Instrument composed = qme::compose_instruments(identity_inst, inst);
    REQUIRE(composed.size() == inst.size());
    for (std::size_t x = 0; x < inst.size(); ++x) {
        CHECK(composed.outcomes()[x].label == "(" + inst.outcomes()[x].label + ",id)");
        const ComplexMatrix got = composed.outcomes()[x].operation.map().kraus_sum();
        const ComplexMatrix want = inst.outcomes()[x].operation.map().kraus_sum();
        CHECK(got.max_abs_diff(want) <= 1e-12);
    }

    CHECK_THROWS_AS(qme::compose_instruments(identity_inst, qme::random_instrument(2, 2, 1, rng)),
                    qme::DimensionError);
}

TEST_CASE("a composed instrument measures the sequential product observable") {
    qme::Rng rng(10013);
    for (int trial = 0; trial < 20; ++trial) {
        const int dim = rng.uniform_int(2, 4);
        const qme::Observable a = qme::random_observable(dim, 2, rng);
        const qme::Observable b = qme::random_observable(dim, 2, rng);
        const qme::Instrument ja = qme::luders_instrument(a);
        const qme::Instrument jb = qme::luders_instrument(b);

        const qme::ObservableResult direct = qme::observable_sequential(a, ja, b);
        const qme::ObservableResult via_compose = qme::measured_observable(qme::compose_instruments(jb, ja));
        REQUIRE(direct.dropped.empty());
        REQUIRE(via_compose.dropped.empty());
        REQUIRE(direct.observable.size() == via_compose.observable.size());
        for (std::size_t i = 0; i < direct.observable.size(); ++i) {
            CHECK(direct.observable.outcomes()[i].label == via_compose.observable.outcomes()[i].label);
            CHECK(direct.observable.outcomes()[i].effect.matrix().max_abs_diff(
                      via_compose.observable.outcomes()[i].effect.matrix()) <= 1e-8);
        }
    }
}

TEST_CASE("coarse_grain validates its assignment") {
    qme::Rng rng(10014);
    const qme::Observable a = qme::random_observable(3, 3, rng);  // labels 0, 1, 2

    std::map<std::string, std::string> identity_map{{"0", "0"}, {"1", "1"}, {"2", "2"}};
    const qme::Observable same = qme::coarse_grain(a, identity_map);
    REQUIRE(same.size() == 3);
    for (std::size_t x = 0; x < 3; ++x)
        CHECK(same.outcomes()[x].effect.matrix().max_abs_diff(a.outcomes()[x].effect.matrix()) <= 1e-12);

    std::map<std::string, std::string> merge_all{{"0", "all"}, {"1", "all"}, {"2", "all"}};
    const qme::Observable merged = qme::coarse_grain(a, merge_all);
    REQUIRE(merged.size() == 1);
    CHECK(merged.outcomes()[0].label == "all");
    CHECK(merged.outcomes()[0].effect.matrix().max_abs_diff(ComplexMatrix::identity(3)) <= 1e-8);

    std::map<std::string, std::string> missing{{"0", "x"}, {"1", "x"}};
    CHECK_THROWS_AS(qme::coarse_grain(a, missing), qme::LabelError);
    std::map<std::string, std::string> unknown{{"0", "x"}, {"1", "x"}, {"2", "x"}, {"9", "x"}};
    CHECK_THROWS_AS(qme::coarse_grain(a, unknown), qme::LabelError);
    CHECK_THROWS_AS(qme::coarse_grain(a, merge_all, {"all", "all"}), qme::LabelError);
    CHECK_THROWS_AS(qme::coarse_grain(a, merge_all, {"other"}), qme::LabelError);
    CHECK_THROWS_AS(qme::coarse_grain(a, merge_all, {"all", "ghost"}), qme::NotSurjectiveError);

    // declared target order wins over first-appearance order
    std::map<std::string, std::string> split{{"0", "hi"}, {"1", "lo"}, {"2", "lo"}};
    const qme::Observable ordered = qme::coarse_grain(a, split, {"lo", "hi"});
    CHECK(ordered.labels() == std::vector<std::string>{"lo", "hi"});
}

TEST_CASE("coarse-graining never loses entropy over a thousand draws") {
    int violations = 0;
    double worst = 1e9;
    for (qme::RngSeed seed = 0; seed < 1000; ++seed) {
        qme::Rng rng(qme::derive_stream(16180, "coarse-monotone", seed));
        const int dim = rng.uniform_int(2, 5);
        const int outcomes = rng.uniform_int(3, 5);
        const qme::Observable a = qme::random_observable(dim, outcomes, rng);
        const qme::State rho = qme::random_state(dim, rng.uniform_int(1, dim), rng);
        std::map<std::string, std::string> parity;
        for (int x = 0; x < outcomes; ++x) parity[std::to_string(x)] = x % 2 == 0 ? "even" : "odd";
        const qme::Observable coarse = qme::coarse_grain(a, parity);
        const double slack =
            qme::observable_entropy(coarse, rho).nats - qme::observable_entropy(a, rho).nats;
        worst = std::min(worst, slack);
        if (slack < -1e-9) ++violations;
    }
    CAPTURE(worst);
    CHECK(violations == 0);
}

TEST_CASE("distributions report outcome probabilities") {
    const qme::State rho = qme::validate_state(diag({0.75, 0.25}));
    std::vector<qme::ObservableOutcome> outs;
    outs.push_back({"up", qme::validate_effect(diag({1.0, 0.0}))});
    outs.push_back({"down", qme::validate_effect(diag({0.0, 1.0}))});
    const qme::Observable a = qme::validate_observable(std::move(outs));

    const qme::Distribution d = qme::distribution(a, rho);
    REQUIRE(d.weights.size() == 2);
    CHECK(d.weights[0].first == "up");
    CHECK(std::abs(d.weights[0].second - 0.75) <= 1e-12);
    CHECK(std::abs(d.weights[1].second - 0.25) <= 1e-12);

    CHECK(std::abs(qme::distribution_of_subset(a, rho, {"up"}) - 0.75) <= 1e-12);
    CHECK(std::abs(qme::distribution_of_subset(a, rho, {"up", "down"}) - 1.0) <= 1e-10);
    CHECK(qme::distribution_of_subset(a, rho, {}) == 0.0);
    CHECK_THROWS_AS(qme::distribution_of_subset(a, rho, {"up", "up"}), qme::LabelError);
    CHECK_THROWS_AS(qme::distribution_of_subset(a, rho, {"sideways"}), qme::LabelError);

    qme::Rng rng(10015);
    for (int trial = 0; trial < 50; ++trial) {
        const int dim = rng.uniform_int(2, 5);
        const qme::Observable o = qme::random_observable(dim, rng.uniform_int(2, 4), rng);
        const qme::State r = qme::random_state(dim, rng.uniform_int(1, dim), rng);
        const qme::Distribution dist = qme::distribution(o, r);
        double total = 0.0;
        for (const auto& [label, p] : dist.weights) {
            total += p;
            CHECK(std::abs(p - qme::real_trace_product(r.matrix(), o.find(label)->matrix())) <= 1e-12);
        }
        CHECK(std::abs(total - 1.0) <= 1e-10);
        CHECK(std::abs(qme::distribution_of_subset(o, r, o.labels()) - 1.0) <= 1e-10);
    }
}

TEST_CASE("tensor observables pair labels and Kronecker effects") {
    qme::Rng rng(10016);
    const qme::Observable a = qme::random_observable(2, 2, rng);
    const qme::Observable b = qme::random_observable(3, 2, rng);
    const qme::Observable ab = qme::tensor_observable(a, b);
    REQUIRE(ab.size() == 4);
    CHECK(ab.outcomes()[0].label == "(0,0)");
    CHECK(ab.outcomes()[3].label == "(1,1)");
    CHECK(ab.outcomes()[1].effect.matrix().max_abs_diff(
              qme::kron(a.outcomes()[0].effect.matrix(), b.outcomes()[1].effect.matrix())) <= 1e-12);
}

TEST_CASE("entropy is additive over tensor products of observables and states") {
    qme::Rng rng(10017);
    for (int trial = 0; trial < 20; ++trial) {
        const int da = rng.uniform_int(2, 3);
        const int db = rng.uniform_int(2, 3);
        const qme::State rho = qme::random_state(da, da, rng);
        const qme::State sigma = qme::random_state(db, db, rng);
        const qme::State joint = qme::validate_state(qme::kron(rho.matrix(), sigma.matrix()));
        CAPTURE(trial);

        // effect level: S_{a (x) b} = tr(sigma b) S_a + tr(rho a) S_b
        const qme::Effect ea = qme::random_effect(da, rng);
        const qme::Effect eb = qme::random_effect(db, rng);
        const qme::Effect eab = qme::validate_effect(qme::kron(ea.matrix(), eb.matrix()));
        const double pa = qme::real_trace_product(rho.matrix(), ea.matrix());
        const double pb = qme::real_trace_product(sigma.matrix(), eb.matrix());
        const double want_effect =
            pb * qme::effect_entropy(ea, rho).nats + pa * qme::effect_entropy(eb, sigma).nats;
        CHECK(std::abs(qme::effect_entropy(eab, joint).nats - want_effect) <= 1e-9);

        // observable level: S_{A (x) B} = S_A + S_B
        const qme::Observable a = qme::random_observable(da, 2, rng);
        const qme::Observable b = qme::random_observable(db, 2, rng);
        const double want_obs =
            qme::observable_entropy(a, rho).nats + qme::observable_entropy(b, sigma).nats;
        CHECK(std::abs(qme::observable_entropy(qme::tensor_observable(a, b), joint).nats - want_obs) <= 1e-9);
    }
}

TEST_CASE("an identity interaction turns the model into classical reweighting") {
    qme::Rng rng(10018);
    const int dh = 3, dk = 2;
    const qme::Operation nu = qme::validate_operation({ComplexMatrix::identity(dh * dk)});
    const qme::State sigma = qme::random_state(dk, dk, rng);
    const qme::Observable probe = qme::random_observable(dk, 2, rng);
    const qme::MeasurementModel m = qme::validate_measurement_model(dh, dk, nu, sigma, probe);

    const qme::ObservableResult a = qme::model_observable(m);
    const qme::Instrument inst = qme::model_instrument(m);
    const qme::State rho = qme::random_state(dh, dh, rng);
    REQUIRE(a.dropped.empty());
    REQUIRE(a.observable.size() == probe.size());
    for (std::size_t x = 0; x < probe.size(); ++x) {
        const double p = qme::real_trace_product(sigma.matrix(), probe.outcomes()[x].effect.matrix());
        CHECK(a.observable.outcomes()[x].effect.matrix().max_abs_diff(scale(ComplexMatrix::identity(dh), p)) <=
              1e-9);
        CHECK(inst.outcomes()[x].operation.map().apply(rho.matrix()).max_abs_diff(scale(rho.matrix(), p)) <= 1e-9);
    }

    // trivial effects mean no information: entropy pins at ln n
    CHECK(std::abs(qme::observable_entropy(a.observable, rho).nats - std::log(static_cast<double>(dh))) <= 1e-9);
}

TEST_CASE("model instruments agree with the defining partial-trace formula") {
    qme::Rng rng(10019);
    for (int trial = 0; trial < 10; ++trial) {
        const int dh = rng.uniform_int(2, 3);
        const int dk = rng.uniform_int(2, 3);
        const qme::Operation nu = qme::random_instrument(dh * dk, 1, 2, rng).outcomes()[0].operation;
        const qme::State sigma = qme::random_state(dk, dk, rng);
        const qme::Observable probe = qme::random_observable(dk, 2, rng);
        const qme::MeasurementModel m = qme::validate_measurement_model(dh, dk, nu, sigma, probe);
        const qme::State rho = qme::random_state(dh, dh, rng);
        CAPTURE(trial);

        const qme::Instrument inst = qme::model_instrument(m);
        const qme::ObservableResult a = qme::model_observable(m);
        REQUIRE(a.dropped.empty());
        for (std::size_t x = 0; x < probe.size(); ++x) {
            const ComplexMatrix direct =
                qme::model_apply_direct(m, probe.outcomes()[x].effect, rho.matrix());
            CHECK(inst.outcomes()[x].operation.map().apply(rho.matrix()).max_abs_diff(direct) <= 1e-8);

            // the observable route and the instrument route assign each
            // outcome the same probability and the same effect
            const double p_obs =
                qme::real_trace_product(rho.matrix(), a.observable.outcomes()[x].effect.matrix());
            CHECK(std::abs(qme::trace(direct).real() - p_obs) <= 1e-8);
            CHECK(a.observable.outcomes()[x].effect.matrix().max_abs_diff(
                      inst.outcomes()[x].operation.map().kraus_sum()) <= 1e-8);
        }

        const qme::ModelEntropyReport report = qme::model_entropy_gap(m, rho);
        CHECK(std::abs(report.probe_nats - (report.observable_nats - report.gap)) <= 1e-9);
        CHECK(std::abs(report.observable_nats - qme::observable_entropy(a.observable, rho).nats) <= 1e-9);
    }

    const qme::Operation nu = qme::random_instrument(6, 1, 2, rng).outcomes()[0].operation;
    const qme::MeasurementModel m = qme::validate_measurement_model(
        3, 2, nu, qme::random_state(2, 2, rng), qme::random_observable(2, 2, rng));
    CHECK_THROWS_AS(qme::model_entropy_gap(m, qme::random_state(2, 2, rng)), qme::DimensionError);
    CHECK_THROWS_AS(
        qme::model_apply_direct(m, qme::random_effect(2, rng), qme::random_state(2, 2, rng).matrix()),
        qme::DimensionError);
}

TEST_CASE("atomic probes make the pointer at least as noisy as the observable") {
    qme::Rng rng(10020);
    for (int trial = 0; trial < 10; ++trial) {
        const int dh = rng.uniform_int(2, 3);
        const int dk = 2;
        const qme::Operation nu = qme::random_instrument(dh * dk, 1, 2, rng).outcomes()[0].operation;
        const qme::State sigma = qme::random_state(dk, dk, rng);

        // atomic probe: rank-one projections onto a random orthonormal basis
        const ComplexMatrix u = qme::random_unitary(dk, rng);
        std::vector<qme::ObservableOutcome> outs;
        for (int i = 0; i < dk; ++i) {
            ComplexMatrix p(dk);
            for (int r = 0; r < dk; ++r)
                for (int c = 0; c < dk; ++c) p(r, c) = u(r, i) * std::conj(u(c, i));
            outs.push_back({std::to_string(i), qme::validate_effect(qme::hermitian_part(p))});
        }
        const qme::MeasurementModel m = qme::validate_measurement_model(
            dh, dk, nu, sigma, qme::validate_observable(std::move(outs)));
        const qme::State rho = qme::random_state(dh, dh, rng);
        CAPTURE(trial);

        const qme::ModelEntropyReport report = qme::model_entropy_gap(m, rho);
        CHECK(report.gap <= 1e-9);
        CHECK(report.observable_nats <= report.probe_nats + 1e-9);
    }
}
