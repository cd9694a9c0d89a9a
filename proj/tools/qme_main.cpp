// qme: compute rho-entropies, build sequential products and model-induced
// observables, generate random ensembles, and run the property suite.
//
// Exit codes: 0 success, 1 property violation from verify, 2 usage or parse
// error, 3 domain invariant violation.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qme/entropy.hpp"
#include "qme/errors.hpp"
#include "qme/json_io.hpp"
#include "qme/objects.hpp"
#include "qme/random_objects.hpp"
#include "qme/sequential.hpp"
#include "qme/suite.hpp"

namespace {

using nlohmann::json;

// Fixed 12-significant-digit decimal, keeping trailing zeros so the digit
// count is visible in the output.
std::string format_sig12(double v) {
    if (v == 0.0) return "0";
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    const int exp10 = static_cast<int>(std::floor(std::log10(std::abs(v))));
    char buf[64];
    if (exp10 < -4 || exp10 > 11) {
        std::snprintf(buf, sizeof buf, "%.11e", v);
    } else {
        const int prec = 11 - exp10;
        std::snprintf(buf, sizeof buf, "%.*f", prec < 0 ? 0 : prec, v);
    }
    return buf;
}

json load_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw qme::ConfigError("cannot open '" + path + "'");
    return json::parse(in);  // parse_error propagates with its byte offset
}

void emit(const std::string& text, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(output_path, std::ios::binary);
    if (!out) throw qme::ConfigError("cannot write '" + output_path + "'");
    out << text;
}

qme::RngSeed resolve_seed(const std::optional<qme::RngSeed>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("QME_DEFAULT_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0')
            throw qme::ConfigError("QME_DEFAULT_SEED must be an integer, got '" + std::string(env) + "'");
        return v;
    }
    return qme::SuiteConfig{}.seed;
}

struct Sweep {
    double start;
    double end;
    double step;
};

Sweep parse_sweep(const std::string& text) {
    // lambda=START:END:STEP
    const std::string prefix = "lambda=";
    if (text.rfind(prefix, 0) != 0) throw qme::ConfigError("--sweep expects lambda=START:END:STEP");
    std::istringstream body(text.substr(prefix.size()));
    Sweep s{};
    char c1 = 0;
    char c2 = 0;
    if (!(body >> s.start >> c1 >> s.end >> c2 >> s.step) || c1 != ':' || c2 != ':' || body.peek() != EOF)
        throw qme::ConfigError("--sweep expects lambda=START:END:STEP");
    if (s.step <= 0.0 || s.start < 0.0 || s.end < s.start)
        throw qme::ConfigError("--sweep needs 0 <= START <= END and STEP > 0");
    return s;
}

struct EntropyArgs {
    std::string target;
    std::string state_path;
    std::string effect_path;
    std::string observable_path;
    std::string instrument_path;
    std::string format = "plain";
    std::string sweep;
    std::string output;
};

int cmd_entropy(const EntropyArgs& args) {
    if (args.state_path.empty()) throw qme::ConfigError("entropy requires --state");
    const qme::State rho = qme::state_from_json(load_json(args.state_path));

    if (!args.sweep.empty()) {
        if (args.target != "effect") throw qme::ConfigError("--sweep applies to the effect target");
        if (args.effect_path.empty()) throw qme::ConfigError("entropy effect requires --effect");
        const qme::Effect a = qme::effect_from_json(load_json(args.effect_path));
        const Sweep sweep = parse_sweep(args.sweep);
        std::string table = "lambda\tentropy_nats\n";
        for (int i = 0;; ++i) {
            const double lambda = sweep.start + i * sweep.step;
            if (lambda > sweep.end + 1e-12) break;
            double nats = 0.0;
            if (lambda > 0.0) {
                qme::ComplexMatrix m = a.matrix();
                m *= qme::ComplexScalar(lambda);
                nats = qme::effect_entropy(qme::validate_effect(std::move(m)), rho).nats;
            }
            table += format_sig12(lambda) + "\t" + format_sig12(nats) + "\n";
        }
        emit(table, args.output);
        return 0;
    }

    double nats = 0.0;
    if (args.target == "state") {
        nats = qme::von_neumann_entropy(rho).nats;
    } else if (args.target == "effect") {
        if (args.effect_path.empty()) throw qme::ConfigError("entropy effect requires --effect");
        nats = qme::effect_entropy(qme::effect_from_json(load_json(args.effect_path)), rho).nats;
    } else if (args.target == "observable") {
        if (args.observable_path.empty()) throw qme::ConfigError("entropy observable requires --observable");
        nats = qme::observable_entropy(qme::observable_from_json(load_json(args.observable_path)), rho).nats;
    } else {
        if (args.instrument_path.empty()) throw qme::ConfigError("entropy instrument requires --instrument");
        nats = qme::instrument_entropy(qme::instrument_from_json(load_json(args.instrument_path)), rho).nats;
    }

    std::string text;
    if (args.format == "json")
        text = json{{"entropy_nats", nats}}.dump(2) + "\n";
    else if (args.format == "tsv")
        text = "entropy_nats\t" + format_sig12(nats) + "\n";
    else
        text = format_sig12(nats) + "\n";
    emit(text, args.output);
    return 0;
}

struct SeqprodArgs {
    std::string kind;
    std::string effect_a;
    std::string effect_b;
    std::string observable_a;
    std::string observable_b;
    std::vector<std::string> alphas;
    std::string instrument_path;
    std::string state_path;
    std::string output;
};

int cmd_seqprod(const SeqprodArgs& args) {
    const bool effect_level = !args.effect_a.empty() || !args.effect_b.empty();
    const bool observable_level = !args.observable_a.empty() || !args.observable_b.empty();
    if (effect_level == observable_level)
        throw qme::ConfigError("seqprod needs either --effect-a/--effect-b or --observable-a/--observable-b");

    std::optional<qme::State> rho;
    if (!args.state_path.empty()) rho = qme::state_from_json(load_json(args.state_path));

    json out;
    if (effect_level) {
        if (args.effect_a.empty() || args.effect_b.empty())
            throw qme::ConfigError("seqprod on effects needs both --effect-a and --effect-b");
        const qme::Effect a = qme::effect_from_json(load_json(args.effect_a));
        const qme::Effect b = qme::effect_from_json(load_json(args.effect_b));
        qme::Operation op = [&] {
            if (args.kind == "luders") return qme::luders_operation(a);
            if (args.kind == "holevo") {
                if (args.alphas.size() != 1)
                    throw qme::ConfigError("seqprod holevo on effects needs exactly one --alpha");
                return qme::holevo_operation(a, qme::state_from_json(load_json(args.alphas[0])));
            }
            throw qme::ConfigError("seqprod on effects supports kinds luders and holevo");
        }();
        const qme::Effect prod = qme::sequential_product_effect(op, b);
        out = qme::effect_to_json(prod);
        if (rho) out["entropy_nats"] = qme::effect_entropy(prod, *rho).nats;
    } else {
        if (args.observable_b.empty()) throw qme::ConfigError("seqprod on observables needs --observable-b");
        const qme::Observable b = qme::observable_from_json(load_json(args.observable_b));
        qme::Observable a = [&] {
            if (!args.observable_a.empty()) return qme::observable_from_json(load_json(args.observable_a));
            if (args.kind != "instrument")
                throw qme::ConfigError("seqprod on observables needs --observable-a");
            // With a custom instrument the first observable defaults to the
            // one the instrument measures.
            return qme::measured_observable(qme::instrument_from_json(load_json(args.instrument_path)))
                .observable;
        }();
        qme::Instrument inst = [&] {
            if (args.kind == "luders") return qme::luders_instrument(a);
            if (args.kind == "holevo") {
                if (args.alphas.size() != a.size())
                    throw qme::ConfigError("seqprod holevo needs one --alpha per outcome of the first observable");
                std::vector<qme::State> states;
                for (const std::string& path : args.alphas)
                    states.push_back(qme::state_from_json(load_json(path)));
                return qme::holevo_instrument(a, states);
            }
            if (args.instrument_path.empty())
                throw qme::ConfigError("seqprod instrument needs --instrument");
            return qme::instrument_from_json(load_json(args.instrument_path));
        }();
        const qme::ObservableResult prod = qme::observable_sequential(a, inst, b);
        out = qme::observable_to_json(prod.observable);
        out["dropped"] = prod.dropped;
        if (rho) out["entropy_nats"] = qme::observable_entropy(prod.observable, *rho).nats;
    }
    emit(out.dump(2) + "\n", args.output);
    return 0;
}

struct CoarseArgs {
    std::string observable_path;
    std::string map_path;
    std::vector<std::string> targets;
    std::string state_path;
    std::string output;
};

int cmd_coarse(const CoarseArgs& args) {
    const qme::Observable a = qme::observable_from_json(load_json(args.observable_path));
    const json jmap = load_json(args.map_path);
    if (!jmap.is_object()) throw qme::JsonError("coarse-graining map must be a JSON object");
    std::map<qme::OutcomeLabel, qme::OutcomeLabel> assignment;
    for (const auto& [key, value] : jmap.items()) {
        if (!value.is_string()) throw qme::JsonError("coarse-graining map values must be strings");
        assignment[key] = value.get<std::string>();
    }
    const qme::Observable b = qme::coarse_grain(a, assignment, args.targets);
    json out = qme::observable_to_json(b);
    if (!args.state_path.empty()) {
        const qme::State rho = qme::state_from_json(load_json(args.state_path));
        out["entropy_nats"] = qme::observable_entropy(b, rho).nats;
        out["fine_entropy_nats"] = qme::observable_entropy(a, rho).nats;
    }
    emit(out.dump(2) + "\n", args.output);
    return 0;
}

struct ModelArgs {
    std::string model_path;
    std::string state_path;
    std::string output;
};

int cmd_model(const ModelArgs& args) {
    const qme::MeasurementModel m = qme::model_from_json(load_json(args.model_path));
    const qme::State rho = qme::state_from_json(load_json(args.state_path));
    const qme::ObservableResult a = qme::model_observable(m);
    const qme::ModelEntropyReport report = qme::model_entropy_gap(m, rho);
    json out = {{"observable", qme::observable_to_json(a.observable)},
                {"dropped", a.dropped},
                {"system_entropy_nats", report.observable_nats},
                {"pointer_entropy_nats", report.probe_nats},
                {"gap_nats", report.gap},
                {"gap_nonpositive", report.gap <= 0.0}};
    emit(out.dump(2) + "\n", args.output);
    return 0;
}

struct VerifyArgs {
    std::vector<std::string> only;
    std::optional<qme::RngSeed> seed;
    std::uint64_t trials = 0;
    std::vector<int> dims;
    double tolerance = 0.0;
    bool serial = false;
    std::string output;
};

int cmd_verify(const VerifyArgs& args) {
    qme::SuiteConfig config;
    config.seed = resolve_seed(args.seed);
    config.trials = args.trials;
    if (!args.dims.empty()) config.dims = args.dims;
    config.tolerance = args.tolerance;
    config.parallel = !args.serial;

    std::vector<std::string> ids = args.only.empty() ? qme::registry_ids() : args.only;
    for (const std::string& id : ids)
        if (!qme::is_registered(id)) throw qme::UnknownCheckError("no check named '" + id + "'");

    bool all_passed = true;
    std::vector<qme::CheckReport> reports;
    reports.reserve(ids.size());
    for (const std::string& id : ids) {
        qme::CheckReport report = qme::run_check(id, config);
        std::fprintf(stderr, "%-30s %s  worst_margin=%.3e  trials=%llu  %.2fs\n", report.id.c_str(),
                     report.passed ? "pass" : "FAIL", report.worst_margin,
                     static_cast<unsigned long long>(report.trials), report.elapsed_seconds);
        all_passed = all_passed && report.passed;
        reports.push_back(std::move(report));
    }
    emit(qme::reports_to_json(reports).dump(2) + "\n", args.output);
    return all_passed ? 0 : 1;
}

struct GenArgs {
    std::string kind;
    int dim = 0;
    int rank = 0;
    int outcomes = 2;
    int kraus = 1;
    std::optional<qme::RngSeed> seed;
    std::string output;
};

int cmd_gen(const GenArgs& args) {
    const qme::RngSeed seed = resolve_seed(args.seed);
    if (args.dim < 2 || args.dim > 12) throw qme::ConfigError("--dim must lie in [2, 12]");
    json out;
    if (args.kind == "state") {
        const int rank = args.rank == 0 ? args.dim : args.rank;
        if (rank < 1 || rank > args.dim) throw qme::ConfigError("--rank must lie in [1, dim]");
        out = qme::state_to_json(qme::random_state(args.dim, rank, seed));
    } else if (args.kind == "effect") {
        out = qme::effect_to_json(qme::random_effect(args.dim, seed));
    } else if (args.kind == "observable") {
        if (args.outcomes < 1 || args.outcomes > 16) throw qme::ConfigError("--outcomes must lie in [1, 16]");
        out = qme::observable_to_json(qme::random_observable(args.dim, args.outcomes, seed));
    } else {
        if (args.outcomes < 1 || args.outcomes > 16) throw qme::ConfigError("--outcomes must lie in [1, 16]");
        if (args.kraus < 1 || args.kraus > 4) throw qme::ConfigError("--kraus must lie in [1, 4]");
        out = qme::instrument_to_json(qme::random_instrument(args.dim, args.outcomes, args.kraus, seed));
    }
    emit(out.dump(2) + "\n", args.output);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rho-entropy calculus for quantum effects, observables, instruments, and models"};
    app.require_subcommand(1);

    EntropyArgs entropy_args;
    CLI::App* entropy = app.add_subcommand("entropy", "compute an entropy in nats");
    entropy->add_option("target", entropy_args.target, "state, effect, observable, or instrument")
        ->required()
        ->check(CLI::IsMember({"state", "effect", "observable", "instrument"}));
    entropy->add_option("--state", entropy_args.state_path, "state JSON")->check(CLI::ExistingFile);
    entropy->add_option("--effect", entropy_args.effect_path, "effect JSON")->check(CLI::ExistingFile);
    entropy->add_option("--observable", entropy_args.observable_path, "observable JSON")
        ->check(CLI::ExistingFile);
    entropy->add_option("--instrument", entropy_args.instrument_path, "instrument JSON")
        ->check(CLI::ExistingFile);
    entropy->add_option("--format", entropy_args.format, "plain, json, or tsv")
        ->check(CLI::IsMember({"plain", "json", "tsv"}));
    entropy->add_option("--sweep", entropy_args.sweep, "lambda=START:END:STEP scaling sweep (TSV)");
    entropy->add_option("-o,--output", entropy_args.output, "write to file instead of stdout");

    SeqprodArgs seqprod_args;
    CLI::App* seqprod = app.add_subcommand("seqprod", "sequential product of effects or observables");
    seqprod->add_option("kind", seqprod_args.kind, "luders, holevo, or instrument")
        ->required()
        ->check(CLI::IsMember({"luders", "holevo", "instrument"}));
    seqprod->add_option("--effect-a", seqprod_args.effect_a, "first effect JSON")->check(CLI::ExistingFile);
    seqprod->add_option("--effect-b", seqprod_args.effect_b, "second effect JSON")->check(CLI::ExistingFile);
    seqprod->add_option("--observable-a", seqprod_args.observable_a, "first observable JSON")
        ->check(CLI::ExistingFile);
    seqprod->add_option("--observable-b", seqprod_args.observable_b, "second observable JSON")
        ->check(CLI::ExistingFile);
    seqprod->add_option("--alpha", seqprod_args.alphas, "Holevo state JSON (repeat per outcome)")
        ->check(CLI::ExistingFile);
    seqprod->add_option("--instrument", seqprod_args.instrument_path, "custom instrument JSON")
        ->check(CLI::ExistingFile);
    seqprod->add_option("--state", seqprod_args.state_path, "state JSON for entropy of the product")
        ->check(CLI::ExistingFile);
    seqprod->add_option("-o,--output", seqprod_args.output, "write to file instead of stdout");

    CoarseArgs coarse_args;
    CLI::App* coarse = app.add_subcommand("coarse", "coarse-grain an observable");
    coarse->add_option("--observable", coarse_args.observable_path, "observable JSON")
        ->required()
        ->check(CLI::ExistingFile);
    coarse->add_option("--map", coarse_args.map_path, "JSON object mapping outcome labels to targets")
        ->required()
        ->check(CLI::ExistingFile);
    coarse->add_option("--targets", coarse_args.targets, "explicit target list")->delimiter(',');
    coarse->add_option("--state", coarse_args.state_path, "state JSON for before/after entropies")
        ->check(CLI::ExistingFile);
    coarse->add_option("-o,--output", coarse_args.output, "write to file instead of stdout");

    ModelArgs model_args;
    CLI::App* model = app.add_subcommand("model", "measured observable and entropy gap of a model");
    model->add_option("--model", model_args.model_path, "measurement model JSON")
        ->required()
        ->check(CLI::ExistingFile);
    model->add_option("--state", model_args.state_path, "system state JSON")
        ->required()
        ->check(CLI::ExistingFile);
    model->add_option("-o,--output", model_args.output, "write to file instead of stdout");

    VerifyArgs verify_args;
    CLI::App* verify = app.add_subcommand("verify", "run the randomized property suite");
    verify->add_option("--only", verify_args.only, "check id (repeatable); default is the full registry");
    verify->add_option("--seed", verify_args.seed, "suite seed");
    verify->add_option("--trials", verify_args.trials, "trials per check (0 = per-check default)");
    verify->add_option("--dims", verify_args.dims, "dimension pool, e.g. 2,3,4,5")->delimiter(',');
    verify->add_option("--tolerance", verify_args.tolerance, "tolerance override (0 = per-check default)");
    verify->add_flag("--serial", verify_args.serial, "run trials on one thread");
    verify->add_option("-o,--output", verify_args.output, "write the JSON report to a file");

    GenArgs gen_args;
    CLI::App* gen = app.add_subcommand("gen", "generate a random object as JSON");
    gen->add_option("kind", gen_args.kind, "state, effect, observable, or instrument")
        ->required()
        ->check(CLI::IsMember({"state", "effect", "observable", "instrument"}));
    gen->add_option("--dim", gen_args.dim, "Hilbert space dimension")->required();
    gen->add_option("--rank", gen_args.rank, "state rank (default: dim)");
    gen->add_option("--outcomes", gen_args.outcomes, "outcome count (default 2)");
    gen->add_option("--kraus", gen_args.kraus, "Kraus operators per outcome (default 1)");
    gen->add_option("--seed", gen_args.seed, "RNG seed (falls back to QME_DEFAULT_SEED)");
    gen->add_option("-o,--output", gen_args.output, "write to file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*entropy) return cmd_entropy(entropy_args);
        if (*seqprod) return cmd_seqprod(seqprod_args);
        if (*coarse) return cmd_coarse(coarse_args);
        if (*model) return cmd_model(model_args);
        if (*verify) return cmd_verify(verify_args);
        return cmd_gen(gen_args);
    } catch (const nlohmann::json::parse_error& e) {
        std::cerr << "error: parse error at byte " << e.byte << ": " << e.what() << "\n";
        return 2;
    } catch (const qme::JsonError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const qme::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const qme::UnknownCheckError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const qme::LabelError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const qme::NotSurjectiveError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const qme::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
