#include "remknap/batch.hpp"

#include "remknap/errors.hpp"
#include "remknap/offline.hpp"

#include <exception>

namespace remknap {

ResultRow evaluate_one(const Instance& instance, const EvalOptions& options) {
    const Instance normalized = normalize(instance);

    PropParams params;
    const PropParams* params_ptr = nullptr;
    if (options.algorithm == AlgorithmId::proppack) {
        if (!options.epsilon) {
            throw DomainError("proppack requires an epsilon");
        }
        params = PropParams::from_user(*options.epsilon);
        params_ptr = &params;
    }

    BitTape tape = compute_advice(options.algorithm, normalized, params_ptr);
    auto policy = make_policy(options.algorithm, params_ptr);
    const RunRecord record = run(*policy, normalized, tape);
    const OptResult opt = optimal_gain(normalized);

    ResultRow row;
    row.instance = instance.name;
    row.n = instance.sizes.size();
    row.algorithm = std::string(algorithm_name(options.algorithm));
    row.epsilon = options.algorithm == AlgorithmId::proppack ? options.epsilon
                                                             : std::nullopt;
    row.advice_bits = record.advice_bits_read;
    row.alg_gain = record.final_gain;
    row.opt_gain = opt.gain;
    row.ratio = performance(opt.gain, record.final_gain);
    return row;
}

std::vector<ResultRow> evaluate(const std::vector<Instance>& instances,
                                const EvalOptions& options) {
    std::vector<ResultRow> rows(instances.size());
    if (options.mode == ExecMode::serial) {
        for (std::size_t i = 0; i < instances.size(); ++i) {
            rows[i] = evaluate_one(instances[i], options);
        }
        return rows;
    }

    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(instances.size()); ++i) {
        try {
            rows[static_cast<std::size_t>(i)] =
                evaluate_one(instances[static_cast<std::size_t>(i)], options);
        } catch (...) {
#pragma omp critical
            if (!failure) {
                failure = std::current_exception();
            }
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return rows;
}

} // namespace remknap
