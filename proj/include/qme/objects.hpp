#pragma once

#include <string>
#include <vector>

#include "qme/complex_matrix.hpp"
#include "qme/linalg.hpp"

namespace qme {

// Density operator: Hermitian, PSD, unit trace.
class State {
public:
    const ComplexMatrix& matrix() const { return m_; }
    int dim() const { return m_.dim(); }

private:
    friend State validate_state(ComplexMatrix rho);
    explicit State(ComplexMatrix m) : m_(std::move(m)) {}
    ComplexMatrix m_;
};

// Effect: Hermitian with spectrum in [0, 1], nonzero.
class Effect {
public:
    const ComplexMatrix& matrix() const { return m_; }
    int dim() const { return m_.dim(); }

private:
    friend Effect validate_effect(ComplexMatrix a);
    explicit Effect(ComplexMatrix m) : m_(std::move(m)) {}
    ComplexMatrix m_;
};

struct ObservableOutcome {
    std::string label;
    Effect effect;
};

// Finite observable: labeled nonzero effects summing to the identity.
class Observable {
public:
    const std::vector<ObservableOutcome>& outcomes() const { return outcomes_; }
    int dim() const { return outcomes_.front().effect.dim(); }
    std::size_t size() const { return outcomes_.size(); }

    const Effect* find(const std::string& label) const {
        for (const auto& o : outcomes_)
            if (o.label == label) return &o.effect;
        return nullptr;
    }

    std::vector<std::string> labels() const {
        std::vector<std::string> out;
        out.reserve(outcomes_.size());
        for (const auto& o : outcomes_) out.push_back(o.label);
        return out;
    }

private:
    friend Observable validate_observable(std::vector<ObservableOutcome> outcomes);
    explicit Observable(std::vector<ObservableOutcome> o) : outcomes_(std::move(o)) {}
    std::vector<ObservableOutcome> outcomes_;
};

// Unvalidated completely positive map in Kraus form. Operations wrap a
// validated one; duals are handed back raw because the dual of an operation
// need not be trace-nonincreasing.
struct KrausMap {
    std::vector<ComplexMatrix> kraus;

    int dim() const { return kraus.front().dim(); }

    // sum_i K_i m K_i^dagger
    ComplexMatrix apply(const ComplexMatrix& m) const {
        ComplexMatrix out(dim());
        for (const ComplexMatrix& k : kraus) out += matmul(matmul(k, m), adjoint(k));
        return out;
    }

    // sum_i K_i^dagger K_i
    ComplexMatrix kraus_sum() const {
        ComplexMatrix out(dim());
        for (const ComplexMatrix& k : kraus) out += matmul(adjoint(k), k);
        return out;
    }
};

// Operation: trace-nonincreasing CP map (sum K^dagger K <= I).
class Operation {
public:
    const std::vector<ComplexMatrix>& kraus() const { return map_.kraus; }
    const KrausMap& map() const { return map_; }
    int dim() const { return map_.dim(); }

private:
    friend Operation validate_operation(std::vector<ComplexMatrix> kraus);
    explicit Operation(KrausMap m) : map_(std::move(m)) {}
    KrausMap map_;
};

struct InstrumentOutcome {
    std::string label;
    Operation operation;
};

// Instrument: labeled operations whose Kraus sums add to the identity.
class Instrument {
public:
    const std::vector<InstrumentOutcome>& outcomes() const { return outcomes_; }
    int dim() const { return outcomes_.front().operation.dim(); }
    std::size_t size() const { return outcomes_.size(); }

    const Operation* find(const std::string& label) const {
        for (const auto& o : outcomes_)
            if (o.label == label) return &o.operation;
        return nullptr;
    }

private:
    friend Instrument validate_instrument(std::vector<InstrumentOutcome> outcomes);
    explicit Instrument(std::vector<InstrumentOutcome> o) : outcomes_(std::move(o)) {}
    std::vector<InstrumentOutcome> outcomes_;
};

// Measurement model: channel nu on the system-probe pair, probe state sigma,
// and pointer observable on the probe.
class MeasurementModel {
public:
    int dim_h() const { return dim_h_; }
    int dim_k() const { return dim_k_; }
    const Operation& nu() const { return nu_; }
    const State& sigma() const { return sigma_; }
    const Observable& probe() const { return probe_; }

private:
    friend MeasurementModel validate_measurement_model(int dim_h, int dim_k, Operation nu, State sigma,
                                                       Observable probe);
    MeasurementModel(int dh, int dk, Operation nu, State sigma, Observable probe)
        : dim_h_(dh), dim_k_(dk), nu_(std::move(nu)), sigma_(std::move(sigma)), probe_(std::move(probe)) {}
    int dim_h_;
    int dim_k_;
    Operation nu_;
    State sigma_;
    Observable probe_;
};

State validate_state(ComplexMatrix rho);
Effect validate_effect(ComplexMatrix a);
Observable validate_observable(std::vector<ObservableOutcome> outcomes);
Operation validate_operation(std::vector<ComplexMatrix> kraus);
Instrument validate_instrument(std::vector<InstrumentOutcome> outcomes);
MeasurementModel validate_measurement_model(int dim_h, int dim_k, Operation nu, State sigma, Observable probe);

// I - a; ZeroEffectError when a is the identity within tolerance.
Effect complement(const Effect& a);

}  // namespace qme
