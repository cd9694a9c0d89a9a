// Benchmark of the OpenMP kernels against the serial reference
// implementations, plus a serial-versus-parallel run of the property suite.
// Every timed pair is also cross-checked for agreement, so a speedup never
// comes from computing something different.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qme/entropy.hpp"
#include "qme/linalg.hpp"
#include "qme/objects.hpp"
#include "qme/random_objects.hpp"
#include "qme/reference.hpp"
#include "qme/rng.hpp"
#include "qme/suite.hpp"

namespace {

double seconds_for(int repeats, const std::function<void()>& fn) {
    const auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < repeats; ++i) fn();
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(stop - start).count() / repeats;
}

void report_row(const char* kernel, int dim, double ref_s, double omp_s, double diff) {
    std::printf("%-14s dim=%-4d ref=%9.3e s  omp=%9.3e s  speedup=%5.2fx  max|diff|=%.2e\n", kernel, dim,
                ref_s, omp_s, ref_s / omp_s, diff);
}

void bench_matmul(int dim, int repeats) {
    qme::Rng rng(91 + static_cast<qme::RngSeed>(dim));
    const qme::ComplexMatrix a = qme::random_hermitian(dim, rng);
    const qme::ComplexMatrix b = qme::random_hermitian(dim, rng);
    const double diff = qme::matmul(a, b).max_abs_diff(qme::ref::matmul(a, b));
    const double ref_s = seconds_for(repeats, [&] { qme::ref::matmul(a, b); });
    const double omp_s = seconds_for(repeats, [&] { qme::matmul(a, b); });
    report_row("matmul", dim, ref_s, omp_s, diff);
}

void bench_kron(int dim_left, int dim_right, int repeats) {
    qme::Rng rng(17);
    const qme::ComplexMatrix a = qme::random_hermitian(dim_left, rng);
    const qme::ComplexMatrix b = qme::random_hermitian(dim_right, rng);
    const double diff = qme::kron(a, b).max_abs_diff(qme::ref::kron(a, b));
    const double ref_s = seconds_for(repeats, [&] { qme::ref::kron(a, b); });
    const double omp_s = seconds_for(repeats, [&] { qme::kron(a, b); });
    report_row("kron", dim_left * dim_right, ref_s, omp_s, diff);
}

void bench_partial_trace(int dim_left, int dim_right, int repeats) {
    qme::Rng rng(29);
    const qme::ComplexMatrix m = qme::random_hermitian(dim_left * dim_right, rng);
    const double diff =
        qme::partial_trace(m, dim_left, dim_right, qme::TensorFactor::right)
            .max_abs_diff(qme::ref::partial_trace(m, dim_left, dim_right, qme::TensorFactor::right));
    const double ref_s = seconds_for(repeats, [&] {
        qme::ref::partial_trace(m, dim_left, dim_right, qme::TensorFactor::right);
    });
    const double omp_s =
        seconds_for(repeats, [&] { qme::partial_trace(m, dim_left, dim_right, qme::TensorFactor::right); });
    report_row("partial_trace", dim_left * dim_right, ref_s, omp_s, diff);
}

void bench_effect_entropy(int dim, int repeats) {
    qme::Rng rng(43);
    const qme::State rho = qme::random_state(dim, dim, rng);
    const qme::Effect a = qme::random_effect(dim, rng);
    const double lhs = qme::effect_entropy(a, rho).nats;
    const double rhs = qme::ref::effect_entropy(rho.matrix(), a.matrix());
    const double ref_s = seconds_for(repeats, [&] { qme::ref::effect_entropy(rho.matrix(), a.matrix()); });
    const double omp_s = seconds_for(repeats, [&] { qme::effect_entropy(a, rho); });
    report_row("effect_entropy", dim, ref_s, omp_s, std::abs(lhs - rhs));
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads: %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled; both columns run serially\n");
#endif
    std::printf("dims below %d stay on the serial path of the parallel kernels\n\n", qme::kOmpMinDim);

    for (const int dim : {32, 64, 128, 192}) bench_matmul(dim, dim >= 128 ? 3 : 10);
    bench_kron(16, 8, 10);
    bench_kron(24, 8, 5);
    bench_partial_trace(16, 8, 20);
    bench_partial_trace(24, 8, 10);
    bench_effect_entropy(64, 3);
    bench_effect_entropy(96, 2);

    std::printf("\nproperty suite, trials=40 per check:\n");
    qme::SuiteConfig config;
    config.trials = 40;
    config.parallel = false;
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<qme::CheckReport> serial = qme::run_all(config);
    const auto t1 = std::chrono::steady_clock::now();
    config.parallel = true;
    const std::vector<qme::CheckReport> parallel = qme::run_all(config);
    const auto t2 = std::chrono::steady_clock::now();

    bool agree = serial.size() == parallel.size();
    for (std::size_t i = 0; agree && i < serial.size(); ++i)
        agree = serial[i].passed == parallel[i].passed &&
                serial[i].worst_margin == parallel[i].worst_margin;
    std::printf("serial   %.3f s\n", std::chrono::duration<double>(t1 - t0).count());
    std::printf("parallel %.3f s\n", std::chrono::duration<double>(t2 - t1).count());
    std::printf("reports identical (ignoring elapsed): %s\n", agree ? "yes" : "NO");
    return agree ? 0 : 1;
}
