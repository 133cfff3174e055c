#include "remknap/batch.hpp"
#include "remknap/errors.hpp"
#include "remknap/families.hpp"
#include "remknap/io.hpp"
#include "remknap/offline.hpp"
#include "remknap/verifier.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace remknap;

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> values;
    std::istringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) {
        if (!token.empty()) {
            values.push_back(std::stoi(token));
        }
    }
    return values;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> values;
    std::istringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) {
        if (!token.empty()) {
            values.push_back(std::stod(token));
        }
    }
    return values;
}

std::string short_real(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%g", value);
    return buffer;
}

// Writes through a file or stdout, chosen by path ("-" means stdout).
void with_output(const std::string& path, const std::function<void(std::ostream&)>& body) {
    if (path == "-") {
        body(std::cout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ParseError("cannot open '" + path + "' for writing");
    }
    body(out);
}

struct GenArgs {
    std::string family;
    double eps = 0.0;
    int k = 0;
    int m = 0;
    std::string subset;
    std::string variant = "repaired";
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::size_t count = 1;
    std::string out = "-";
};

int cmd_gen(const GenArgs& args) {
    std::vector<Instance> instances;
    if (args.family == "one-bit") {
        instances = gen_one_bit(args.eps);
    } else if (args.family == "log-k") {
        instances = gen_log_k(args.k, args.eps);
    } else if (args.family == "optimality") {
        const OptimalityVariant variant = args.variant == "literal"
                                              ? OptimalityVariant::literal
                                              : OptimalityVariant::repaired;
        if (args.variant != "literal" && args.variant != "repaired") {
            throw DomainError("variant must be 'literal' or 'repaired'");
        }
        instances.push_back(gen_optimality(args.m, args.k, parse_int_list(args.subset), variant));
    } else if (args.family == "uniform") {
        for (std::size_t i = 0; i < args.count; ++i) {
            instances.push_back(gen_uniform(args.n, args.seed + i));
        }
    } else {
        throw DomainError("unknown family '" + args.family +
                          "' (expected one-bit, log-k, optimality or uniform)");
    }
    with_output(args.out, [&](std::ostream& out) { write_instances(out, instances); });
    return 0;
}

struct RunArgs {
    std::string alg;
    double eps = 0.0;
    bool has_eps = false;
    std::string input;
    std::string out = "-";
    bool serial = false;
    bool show_advice = false;
};

int cmd_run(const RunArgs& args) {
    const auto id = algorithm_from_name(args.alg);
    if (!id) {
        throw DomainError("unknown algorithm '" + args.alg + "'");
    }
    if (*id == AlgorithmId::proppack && !args.has_eps) {
        throw DomainError("proppack requires --eps");
    }
    EvalOptions options;
    options.algorithm = *id;
    if (args.has_eps) {
        options.epsilon = args.eps;
    }
    options.mode = args.serial ? ExecMode::serial : ExecMode::parallel;

    const auto instances = read_instances_file(args.input);
    const auto rows = evaluate(instances, options);

    if (args.show_advice) {
        PropParams params;
        const PropParams* params_ptr = nullptr;
        if (*id == AlgorithmId::proppack) {
            params = PropParams::from_user(args.eps);
            params_ptr = &params;
        }
        for (const Instance& instance : instances) {
            const BitTape tape = compute_advice(*id, normalize(instance), params_ptr);
            std::cerr << instance.name << " advice="
                      << (tape.written() ? tape.to_string() : "(none)") << "\n";
        }
    }

    with_output(args.out, [&](std::ostream& out) { write_results_csv(out, rows); });
    return 0;
}

int cmd_opt(const std::string& input) {
    const auto instances = read_instances_file(input);
    for (const Instance& instance : instances) {
        const OptResult result = optimal_gain(instance);
        std::cout << instance.name << " n=" << instance.sizes.size()
                  << " gain=" << format_double(result.gain) << " witness=[";
        for (std::size_t i = 0; i < result.witness.size(); ++i) {
            std::cout << (i ? "," : "") << result.witness[i];
        }
        std::cout << "]\n";
    }
    return 0;
}

struct VerifyArgs {
    std::string input;
    std::string family;
    double eps = 0.0;
    int k = 0;
    int bits = 0;
    bool serial = false;
};

int cmd_verify_lb(const VerifyArgs& args) {
    std::vector<Instance> family;
    if (!args.input.empty()) {
        family = read_instances_file(args.input);
    } else if (args.family == "one-bit") {
        family = gen_one_bit(args.eps);
    } else if (args.family == "log-k") {
        family = gen_log_k(args.k, args.eps);
    } else {
        throw DomainError("verify-lb needs --input or --family {one-bit|log-k}");
    }
    const GameResult result = best_min_performance(
        family, args.bits, args.serial ? ExecMode::serial : ExecMode::parallel);
    std::cout << render_game(family, result);
    return 0;
}

struct SweepArgs {
    std::string alg = "proppack";
    std::string eps_list;
    std::string input;
    std::string out_prefix = "sweep-";
    bool serial = false;
};

int cmd_sweep(const SweepArgs& args) {
    if (algorithm_from_name(args.alg) != AlgorithmId::proppack) {
        throw DomainError("sweep supports only --alg proppack");
    }
    const auto eps_values = parse_double_list(args.eps_list);
    if (eps_values.empty()) {
        throw DomainError("sweep requires --eps-list");
    }
    const auto instances = read_instances_file(args.input);
    for (double eps : eps_values) {
        EvalOptions options;
        options.algorithm = AlgorithmId::proppack;
        options.epsilon = eps;
        options.mode = args.serial ? ExecMode::serial : ExecMode::parallel;
        const auto rows = evaluate(instances, options);
        const auto bound = PropParams::from_user(eps).advice_bits_bound();
        const std::string path = args.out_prefix + "eps" + short_real(eps) + ".csv";
        with_output(path, [&](std::ostream& out) { write_results_csv(out, rows, bound); });
        std::cout << path << "\n";
    }
    return 0;
}

int cmd_constants() {
    const double a = sqrt2::a();
    const double b = sqrt2::b();
    const double c = sqrt2::c();
    const double d = sqrt2::d();
    std::printf("a        = %.12f  (1 - 1/sqrt(2))\n", a);
    std::printf("b        = %.12f  (sqrt(2) - 1)\n", b);
    std::printf("c        = %.12f\n", c);
    std::printf("d        = %.12f  (1/sqrt(2))\n", d);
    std::printf("psi      = %.12f  (4/(1+sqrt(17)))\n", psi());
    for (int k : {2, 4, 8}) {
        std::printf("zeta(%d)  = %.12f  1/zeta(%d) = %.12f\n", k, zeta(k), k,
                    1.0 / zeta(k));
    }
    std::printf("bound terms: 1/d = %.12f, d/c = %.12f, 1/(2b) = %.12f,\n", 1.0 / d,
                d / c, 1.0 / (2.0 * b));
    std::printf("             1/(a+b) = %.12f, 1/(1-a) = %.12f, b/a = %.12f\n",
                1.0 / (a + b), 1.0 / (1.0 - a), b / a);
    const double bound = std::max({1.0 / d, d / c, 1.0 / (2.0 * b), 1.0 / (a + b),
                                   1.0 / (1.0 - a), b / a});
    std::printf("max of terms = %.12f, sqrt(2) = %.12f\n", bound, std::sqrt(2.0));
    for (double eps : {0.5, 0.25, 0.1}) {
        const PropParams params = PropParams::from_user(eps);
        std::printf("proppack eps = %g: internal eps = %.12f, K = %d, delta = %.12f, "
                    "advice bound = %zu bits\n",
                    eps, params.eps, params.num_classes, params.delta,
                    params.advice_bits_bound());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Removable online knapsack laboratory: instance generators, "
                 "advice algorithms, exact offline optima and the advice-game "
                 "lower-bound verifier"};
    app.require_subcommand(1);

    double tolerance = 1e-9;
    bool tolerance_set = false;
    app.add_option("--tolerance", tolerance, "capacity tolerance eta (default 1e-9)")
        ->each([&](const std::string&) { tolerance_set = true; });

    GenArgs gen;
    CLI::App* gen_cmd = app.add_subcommand("gen", "generate instance families");
    gen_cmd->add_option("--family", gen.family, "one-bit | log-k | optimality | uniform")
        ->required();
    gen_cmd->add_option("--eps", gen.eps, "family epsilon");
    gen_cmd->add_option("--k", gen.k, "family k parameter");
    gen_cmd->add_option("--m", gen.m, "optimality family m");
    gen_cmd->add_option("--subset", gen.subset, "optimality subset, e.g. 1,2,5");
    gen_cmd->add_option("--variant", gen.variant, "optimality variant: literal | repaired");
    gen_cmd->add_option("--n", gen.n, "uniform: items per instance");
    gen_cmd->add_option("--seed", gen.seed, "uniform: base seed");
    gen_cmd->add_option("--count", gen.count, "uniform: number of instances (seeds seed..seed+count-1)");
    gen_cmd->add_option("--out", gen.out, "output file ('-' for stdout)");

    RunArgs run_args;
    CLI::App* run_cmd = app.add_subcommand("run", "run an algorithm over an instance file");
    run_cmd->add_option("--alg", run_args.alg, "greedy | half32 | sqrt2 | twobit | proppack")
        ->required();
    run_cmd->add_option("--eps", run_args.eps, "proppack epsilon")
        ->each([&](const std::string&) { run_args.has_eps = true; });
    run_cmd->add_option("--input", run_args.input, "instance file (JSON lines)")->required();
    run_cmd->add_option("--out", run_args.out, "CSV output ('-' for stdout)");
    run_cmd->add_flag("--serial", run_args.serial, "single-threaded evaluation");
    run_cmd->add_flag("--show-advice", run_args.show_advice,
                      "print each instance's advice bits to stderr");

    std::string opt_input;
    CLI::App* opt_cmd = app.add_subcommand("opt", "print the exact offline optimum per instance");
    opt_cmd->add_option("--input", opt_input, "instance file")->required();

    VerifyArgs verify;
    CLI::App* verify_cmd =
        app.add_subcommand("verify-lb", "solve the advice game for a hard family");
    verify_cmd->add_option("--input", verify.input, "family file (JSON lines)");
    verify_cmd->add_option("--family", verify.family, "one-bit | log-k");
    verify_cmd->add_option("--eps", verify.eps, "family epsilon");
    verify_cmd->add_option("--k", verify.k, "log-k family k");
    verify_cmd->add_option("--bits", verify.bits, "advice bit budget")->required();
    verify_cmd->add_flag("--serial", verify.serial, "single-threaded solve");

    SweepArgs sweep;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "run proppack over a list of epsilons");
    sweep_cmd->add_option("--alg", sweep.alg, "algorithm (proppack)");
    sweep_cmd->add_option("--eps-list", sweep.eps_list, "comma-separated epsilons")->required();
    sweep_cmd->add_option("--input", sweep.input, "instance file")->required();
    sweep_cmd->add_option("--out-prefix", sweep.out_prefix, "output file prefix");
    sweep_cmd->add_flag("--serial", sweep.serial, "single-threaded evaluation");

    CLI::App* constants_cmd =
        app.add_subcommand("constants", "print the algorithm constants for audit");

    for (CLI::App* sub : app.get_subcommands({})) {
        sub->fallthrough(); // global flags may follow the subcommand
    }

    try {
        app.parse(argc, argv);

        if (const char* env = std::getenv("REMKNAP_TOLERANCE"); env && !tolerance_set) {
            tolerance = std::stod(env);
        }
        set_capacity_tolerance(tolerance);

        if (gen_cmd->parsed()) {
            return cmd_gen(gen);
        }
        if (run_cmd->parsed()) {
            return cmd_run(run_args);
        }
        if (opt_cmd->parsed()) {
            return cmd_opt(opt_input);
        }
        if (verify_cmd->parsed()) {
            return cmd_verify_lb(verify);
        }
        if (sweep_cmd->parsed()) {
            return cmd_sweep(sweep);
        }
        if (constants_cmd->parsed()) {
            return cmd_constants();
        }
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const RuleViolation& e) {
        std::cerr << "rule violation: " << e.what() << "\n";
        return 1;
    } catch (const TooLarge& e) {
        std::cerr << "too large: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
