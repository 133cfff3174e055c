#include "remknap/batch.hpp"
#include "remknap/families.hpp"
#include "remknap/verifier.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace remknap;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

bool rows_equal(const std::vector<ResultRow>& a, const std::vector<ResultRow>& b) {
    if (a.size() != b.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].instance != b[i].instance || a[i].advice_bits != b[i].advice_bits ||
            a[i].alg_gain != b[i].alg_gain || a[i].opt_gain != b[i].opt_gain ||
            a[i].ratio != b[i].ratio) {
            return false;
        }
    }
    return true;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Benchmark: serial reference vs OpenMP kernels"};
    std::size_t count = 4000;
    std::size_t min_items = 8;
    std::size_t max_items = 14;
    std::uint64_t seed = 20240001;
    int reps = 3;
    app.add_option("--instances", count, "corpus size");
    app.add_option("--min-items", min_items, "smallest instance length");
    app.add_option("--max-items", max_items, "largest instance length");
    app.add_option("--seed", seed, "corpus seed");
    app.add_option("--reps", reps, "repetitions per measurement (best is reported)");
    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (compiled without OpenMP)\n");
#endif

    std::vector<Instance> corpus;
    corpus.reserve(count);
    const std::size_t span = max_items - min_items + 1;
    for (std::size_t i = 0; i < count; ++i) {
        corpus.push_back(gen_uniform(min_items + i % span, seed + i));
    }
    std::printf("corpus: %zu uniform instances, %zu..%zu items\n\n", count, min_items,
                max_items);

    std::printf("%-16s %12s %12s %9s %s\n", "kernel", "serial [s]", "parallel [s]",
                "speedup", "outputs");

    struct Job {
        const char* label;
        EvalOptions options;
    };
    std::vector<Job> jobs = {
        {"sqrt2", {AlgorithmId::sqrt2, std::nullopt, ExecMode::serial}},
        {"twobit", {AlgorithmId::twobit, std::nullopt, ExecMode::serial}},
        {"proppack(0.25)", {AlgorithmId::proppack, 0.25, ExecMode::serial}},
    };
    for (Job& job : jobs) {
        std::vector<ResultRow> serial_rows;
        std::vector<ResultRow> parallel_rows;
        double serial_best = 1e100;
        double parallel_best = 1e100;
        for (int r = 0; r < reps; ++r) {
            job.options.mode = ExecMode::serial;
            auto start = Clock::now();
            serial_rows = evaluate(corpus, job.options);
            serial_best = std::min(serial_best, seconds_since(start));

            job.options.mode = ExecMode::parallel;
            start = Clock::now();
            parallel_rows = evaluate(corpus, job.options);
            parallel_best = std::min(parallel_best, seconds_since(start));
        }
        std::printf("%-16s %12.3f %12.3f %8.2fx %s\n", job.label, serial_best,
                    parallel_best, serial_best / parallel_best,
                    rows_equal(serial_rows, parallel_rows) ? "identical" : "MISMATCH");
    }

    // Advice-game solver: the 255 group subproblems of an 8-instance family
    // are the parallel work units.
    std::vector<Instance> family;
    for (std::size_t i = 0; i < kMaxGameFamily; ++i) {
        family.push_back(gen_uniform(kMaxGameItems, seed + 7000 + i));
    }
    double serial_best = 1e100;
    double parallel_best = 1e100;
    GameResult serial_result;
    GameResult parallel_result;
    const int game_reps = 20;
    for (int r = 0; r < reps; ++r) {
        auto start = Clock::now();
        for (int g = 0; g < game_reps; ++g) {
            serial_result = best_min_performance(family, 3, ExecMode::serial);
        }
        serial_best = std::min(serial_best, seconds_since(start));

        start = Clock::now();
        for (int g = 0; g < game_reps; ++g) {
            parallel_result = best_min_performance(family, 3, ExecMode::parallel);
        }
        parallel_best = std::min(parallel_best, seconds_since(start));
    }
    std::printf("%-16s %12.3f %12.3f %8.2fx %s\n", "advice-game", serial_best,
                parallel_best, serial_best / parallel_best,
                serial_result.value == parallel_result.value ? "identical" : "MISMATCH");
    return 0;
}
