#pragma once

// Shared between suite.cpp (the runner) and checks.cpp (the bodies).

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "json.hpp"

#include "qme/complex_matrix.hpp"
#include "qme/rng.hpp"

namespace qme::detail {

// Per-trial scratchpad. Bodies draw inputs from rng, assert through the
// check_* helpers, and describe their inputs through record_* (which only
// stores anything during the capture re-run of a failing trial).
struct TrialContext {
    Rng rng;
    std::vector<int> dims;
    double tol = 0.0;
    bool tol_overridden = false;
    bool capture = false;

    double worst = std::numeric_limits<double>::infinity();
    std::string worst_invariant;
    nlohmann::json inputs = nlohmann::json::object();
    nlohmann::json failure = nlohmann::json();

    explicit TrialContext(Rng r) : rng(r) {}

    int pick_dim() { return dims[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(dims.size()) - 1))]; }

    // Sub-assertions keep their own documented tolerance unless the caller
    // overrode the check tolerance explicitly.
    double sub_tol(double documented) const { return tol_overridden ? tol : documented; }

    void note_margin(const char* invariant, double margin) {
        if (margin < worst) {
            worst = margin;
            worst_invariant = invariant;
        }
        if (capture && margin < 0.0 && failure.is_null())
            failure = {{"invariant", invariant}, {"margin", margin}};
    }

    // lhs <= rhs + tol
    void check_leq(const char* invariant, double lhs, double rhs) { note_margin(invariant, rhs - lhs + tol); }
    void check_leq_tol(const char* invariant, double lhs, double rhs, double t) {
        note_margin(invariant, rhs - lhs + t);
    }
    // |lhs - rhs| <= tol
    void check_close(const char* invariant, double lhs, double rhs) {
        note_margin(invariant, tol - std::abs(lhs - rhs));
    }
    void check_close_tol(const char* invariant, double lhs, double rhs, double t) {
        note_margin(invariant, t - std::abs(lhs - rhs));
    }
    // max-norm matrix agreement at an explicit tolerance
    void check_matrix_close(const char* invariant, const ComplexMatrix& a, const ComplexMatrix& b, double t) {
        note_margin(invariant, t - a.max_abs_diff(b));
    }
    void check_true(const char* invariant, bool ok) {
        if (!ok) note_margin(invariant, -1.0);
    }

    void record(const char* key, const nlohmann::json& value) {
        if (capture) inputs[key] = value;
    }
    void record_matrix(const char* key, const ComplexMatrix& m);
};

struct CheckSpec {
    const char* id;
    const char* description;
    std::uint64_t default_trials;
    double default_tolerance;
    void (*body)(TrialContext&);
};

// All specs in canonical order; the canary is last.
const std::vector<CheckSpec>& check_specs();

}  // namespace qme::detail
