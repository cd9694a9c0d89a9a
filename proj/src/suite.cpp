#include "qme/suite.hpp"

#include <chrono>
#include <climits>
#include <cmath>
#include <limits>

#include "suite_internal.hpp"

#include "qme/errors.hpp"

namespace qme {

namespace {

const detail::CheckSpec& find_spec(const std::string& id) {
    for (const detail::CheckSpec& spec : detail::check_specs())
        if (id == spec.id) return spec;
    throw UnknownCheckError("no check named '" + id + "'");
}

void validate_config(const SuiteConfig& config) {
    if (config.dims.empty()) throw ConfigError("dims must be nonempty");
    for (int d : config.dims)
        if (d < 2 || d > 12) throw ConfigError("dims entries must lie in [2, 12], got " + std::to_string(d));
    if (!std::isfinite(config.tolerance) || config.tolerance < 0.0)
        throw ConfigError("tolerance must be finite and nonnegative");
    if (config.trials > 1000000) throw ConfigError("trials must be at most 1000000");
}

detail::TrialContext make_context(const std::string& id, const SuiteConfig& config,
                                  const detail::CheckSpec& spec, std::uint64_t trial) {
    detail::TrialContext ctx(Rng(derive_stream(config.seed, id, trial)));
    ctx.dims = config.dims;
    ctx.tol_overridden = config.tolerance != 0.0;
    ctx.tol = ctx.tol_overridden ? config.tolerance : spec.default_tolerance;
    return ctx;
}

// Margins leave the runner finite so the report serializes cleanly; a trial
// that asserted nothing reports the positive cap.
double clamp_margin(double m) {
    const double cap = 1e300;
    if (m > cap) return cap;
    if (m < -cap) return -cap;
    return m;
}

}  // namespace

CheckReport run_check(const std::string& id, const SuiteConfig& config) {
    validate_config(config);
    const detail::CheckSpec& spec = find_spec(id);
    const std::uint64_t trials = config.trials != 0 ? config.trials : spec.default_trials;

    const auto started = std::chrono::steady_clock::now();

    double worst = std::numeric_limits<double>::infinity();
    long long first_fail = LLONG_MAX;
    const long long count = static_cast<long long>(trials);

#pragma omp parallel for schedule(dynamic, 8) reduction(min : worst) reduction(min : first_fail) \
    if (config.parallel)
    for (long long t = 0; t < count; ++t) {
        detail::TrialContext ctx = make_context(id, config, spec, static_cast<std::uint64_t>(t));
        double trial_worst;
        try {
            spec.body(ctx);
            trial_worst = ctx.worst;
        } catch (const std::exception&) {
            trial_worst = -std::numeric_limits<double>::infinity();
        }
        worst = std::min(worst, trial_worst);
        if (trial_worst < 0.0) first_fail = std::min(first_fail, t);
    }

    CheckReport report;
    report.id = id;
    report.trials = trials;
    report.worst_margin = clamp_margin(worst);
    report.passed = first_fail == LLONG_MAX;

    if (!report.passed) {
        // Deterministic capture pass: replay the earliest failing trial and
        // serialize what it drew.
        detail::TrialContext ctx = make_context(id, config, spec, static_cast<std::uint64_t>(first_fail));
        ctx.capture = true;
        nlohmann::json cx = {{"trial", first_fail}};
        try {
            spec.body(ctx);
            if (!ctx.failure.is_null()) {
                cx["invariant"] = ctx.failure["invariant"];
                cx["margin"] = ctx.failure["margin"];
            }
        } catch (const std::exception& e) {
            cx["exception"] = e.what();
        }
        cx["inputs"] = ctx.inputs;
        report.counterexample = cx;
    }

    report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

std::vector<CheckReport> run_checks(const std::vector<std::string>& ids, const SuiteConfig& config) {
    std::vector<CheckReport> reports;
    reports.reserve(ids.size());
    for (const std::string& id : ids) reports.push_back(run_check(id, config));
    return reports;
}

std::vector<CheckReport> run_all(const SuiteConfig& config) {
    return run_checks(registry_ids(), config);
}

const std::vector<std::string>& registry_ids() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> out;
        for (const detail::CheckSpec& spec : detail::check_specs())
            if (spec.id != std::string(kCanaryId)) out.push_back(spec.id);
        return out;
    }();
    return ids;
}

bool is_registered(const std::string& id) {
    for (const detail::CheckSpec& spec : detail::check_specs())
        if (id == spec.id) return true;
    return false;
}

std::string check_description(const std::string& id) { return find_spec(id).description; }

nlohmann::json CheckReport::to_json() const {
    nlohmann::json j = {{"id", id},
                        {"passed", passed},
                        {"worst_margin", worst_margin},
                        {"trials", trials},
                        {"elapsed_seconds", elapsed_seconds}};
    if (!passed) j["counterexample"] = counterexample;
    return j;
}

nlohmann::json reports_to_json(const std::vector<CheckReport>& reports) {
    nlohmann::json arr = nlohmann::json::array();
    for (const CheckReport& r : reports) arr.push_back(r.to_json());
    return arr;
}

}  // namespace qme
