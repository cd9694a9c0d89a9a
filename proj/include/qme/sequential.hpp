#pragma once

#include <map>
#include <string>
#include <vector>

#include "qme/objects.hpp"

namespace qme {

using OutcomeLabel = std::string;

// Outcome probabilities of an observable in a state, in outcome order.
struct Distribution {
    std::vector<std::pair<OutcomeLabel, double>> weights;
};

// An observable plus the labels of product outcomes that vanished and were
// dropped (metadata; usually empty).
struct ObservableResult {
    Observable observable;
    std::vector<OutcomeLabel> dropped;
};

struct ModelEntropyReport {
    double gap;              // sum_x tr(rho A_x) ln[tr(A_x) / (n tr(P_x))]
    double observable_nats;  // S_A(rho) on the system
    double probe_nats;       // S_{I (x) P}(nu(rho (x) sigma)) on the pair
};

// Forward action sum_i K_i m K_i^dagger.
ComplexMatrix apply_operation(const Operation& op, const ComplexMatrix& m);

// Adjoint Kraus list, applied as B -> sum_i K_i^dagger B K_i. Returned raw:
// a dual need not be trace-nonincreasing.
KrausMap dual_operation(const Operation& op);

// The effect measured by op: dual(op)(I) = sum K^dagger K. ZeroEffectError
// when it vanishes.
Effect measured_effect(const Operation& op);

// Single Kraus operator a^{1/2}.
Operation luders_operation(const Effect& a);

// Kraus operators sqrt(mu_j) |phi_j><e_i| a^{1/2} over eigenpairs of alpha.
// Self-checks its action against tr(A a) alpha at construction.
Operation holevo_operation(const Effect& a, const State& alpha);

// a o b = dual(op)(b) where a is the effect measured by op. ZeroEffectError
// when the product vanishes.
Effect sequential_product_effect(const Operation& op, const Effect& b);

// Closed-form Holevo chain a_1 o a_2 o ... o a_m =
// tr(alpha_{m-1} a_m) ... tr(alpha_1 a_2) a_1. Requires m >= 1 effects and
// m-1 states; ZeroEffectError when the chain coefficient vanishes.
Effect holevo_chain(const std::vector<Effect>& effects, const std::vector<State>& alphas);

// One Luders (or Holevo) operation per outcome of a.
Instrument luders_instrument(const Observable& a);
Instrument holevo_instrument(const Observable& a, const std::vector<State>& alphas);

// The observable an instrument measures: x -> I_x^*(I). Outcomes that vanish
// are dropped and reported.
ObservableResult measured_observable(const Instrument& inst);

// A o B on the product outcome set, (x, y) -> I_x^*(B_y). The instrument must
// measure a (labelwise, within the measures tolerance), else
// InstrumentMismatchError. Vanishing products are dropped and reported.
ObservableResult observable_sequential(const Observable& a, const Instrument& inst, const Observable& b);

// Composite instrument applying `first`, then `second`; outcome (x, y) has
// Kraus products K2_{y,l} K1_{x,k}. Measures A o B.
Instrument compose_instruments(const Instrument& second, const Instrument& first);

// B_y = sum over the fiber f^{-1}(y). The assignment must cover the outcome
// set exactly (LabelError otherwise). With an explicit target list, every
// target needs a nonempty fiber (NotSurjectiveError); without one the targets
// are the assignment's image in first-appearance order.
Observable coarse_grain(const Observable& a, const std::map<OutcomeLabel, OutcomeLabel>& assignment,
                        const std::vector<OutcomeLabel>& targets = {});

Distribution distribution(const Observable& a, const State& rho);

// Total probability of a subset of outcomes; LabelError on unknown or
// duplicated labels.
double distribution_of_subset(const Observable& a, const State& rho, const std::vector<OutcomeLabel>& labels);

// Effects kron(A_x, B_y), labels "(x,y)".
Observable tensor_observable(const Observable& a, const Observable& b);

// The instrument I_x(rho) = tr_K[nu(rho (x) sigma)(I (x) P_x)], built from
// square Kraus operators on the system and self-checked against the defining
// formula.
Instrument model_instrument(const MeasurementModel& m);

// Direct evaluation of tr_K[nu(rho (x) sigma)(I (x) P_x)] for one probe
// outcome; the independent route used in cross-checks.
ComplexMatrix model_apply_direct(const MeasurementModel& m, const Effect& probe_effect,
                                 const ComplexMatrix& rho);

// The measured observable A_x = tr_K[(I (x) sigma) nu^*(I (x) P_x)].
ObservableResult model_observable(const MeasurementModel& m);

// Entropy gap between the system observable and the pointer observable on the
// pair; asserts probe_nats == observable_nats - gap within 1e-9.
ModelEntropyReport model_entropy_gap(const MeasurementModel& m, const State& rho);

}  // namespace qme
