#pragma once

#include "remknap/core.hpp"
#include "remknap/oracles.hpp"

namespace remknap {

struct ResultRow {
    std::string instance;
    std::size_t n = 0;
    std::string algorithm;
    std::optional<double> epsilon;
    std::size_t advice_bits = 0;
    double alg_gain = 0.0;
    double opt_gain = 0.0;
    double ratio = 0.0;
};

struct EvalOptions {
    AlgorithmId algorithm = AlgorithmId::greedy;
    std::optional<double> epsilon; // required by proppack
    ExecMode mode = ExecMode::parallel;
};

// Oracle advice, policy run and offline optimum for one instance.
ResultRow evaluate_one(const Instance& instance, const EvalOptions& options);

// One row per instance, in input order regardless of completion order.
// Instances are independent; the parallel path runs them across threads and
// must produce bit-identical rows to the serial path.
std::vector<ResultRow> evaluate(const std::vector<Instance>& instances,
                                const EvalOptions& options);

} // namespace remknap
