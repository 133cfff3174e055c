#include "remknap/verifier.hpp"

#include "remknap/errors.hpp"
#include "remknap/offline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace remknap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double ratio_of(double fill, double opt) {
    if (opt <= 0.0) {
        return 1.0; // only the empty instance has optimum zero
    }
    return fill / opt;
}

// Per-block maximin dynamic program over (node, packed subset) states.
struct BlockSolver {
    const PrefixTree& tree;
    const std::vector<std::vector<double>>& paths;
    const std::vector<double>& optima;
    std::uint32_t block;
    double limit;
    std::vector<std::vector<double>> memo;

    BlockSolver(const PrefixTree& t, const std::vector<std::vector<double>>& p,
                const std::vector<double>& o, std::uint32_t b)
        : tree(t), paths(p), optima(o), block(b),
          limit(1.0 + capacity_tolerance()) {
        memo.resize(tree.nodes.size());
        for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
            memo[i].assign(std::size_t{1} << tree.nodes[i].depth,
                           std::numeric_limits<double>::quiet_NaN());
        }
    }

    double fill(int node, std::uint32_t mask) const {
        const std::vector<double>& sizes = paths[static_cast<std::size_t>(node)];
        double sum = 0.0;
        for (std::size_t i = 0; i < sizes.size(); ++i) {
            if ((mask >> i) & 1u) {
                sum += sizes[i];
            }
        }
        return sum;
    }

    double value(int node_id, std::uint32_t mask) {
        double& slot = memo[static_cast<std::size_t>(node_id)][mask];
        if (!std::isnan(slot)) {
            return slot;
        }
        const PrefixTree::Node& node = tree.nodes[static_cast<std::size_t>(node_id)];
        double worst = kInf;
        for (int id : node.ending) {
            if ((block >> id) & 1u) {
                worst = std::min(worst, ratio_of(fill(node_id, mask),
                                                 optima[static_cast<std::size_t>(id)]));
            }
        }
        for (int child : node.children) {
            if ((tree.nodes[static_cast<std::size_t>(child)].through & block) == 0) {
                continue;
            }
            const std::uint32_t full = mask | (1u << node.depth);
            double best = -kInf;
            std::uint32_t sub = full;
            while (true) {
                if (fill(child, sub) <= limit) {
                    best = std::max(best, value(child, sub));
                }
                if (sub == 0) {
                    break;
                }
                sub = (sub - 1) & full;
            }
            worst = std::min(worst, best);
        }
        slot = worst;
        return worst;
    }

    void reconstruct(int node_id, std::uint32_t mask, GameStrategy& strategy,
                     std::vector<double>& gains) {
        const PrefixTree::Node& node = tree.nodes[static_cast<std::size_t>(node_id)];
        for (int id : node.ending) {
            if ((block >> id) & 1u) {
                gains[static_cast<std::size_t>(id)] = fill(node_id, mask);
            }
        }
        for (int child : node.children) {
            if ((tree.nodes[static_cast<std::size_t>(child)].through & block) == 0) {
                continue;
            }
            const std::uint32_t full = mask | (1u << node.depth);
            double best = -kInf;
            std::uint32_t sub = full;
            while (true) {
                if (fill(child, sub) <= limit) {
                    best = std::max(best, value(child, sub));
                }
                if (sub == 0) {
                    break;
                }
                sub = (sub - 1) & full;
            }
            // First submask attaining the best, in the same iteration order.
            std::uint32_t chosen = 0;
            sub = full;
            while (true) {
                if (fill(child, sub) <= limit && value(child, sub) == best) {
                    chosen = sub;
                    break;
                }
                if (sub == 0) {
                    break;
                }
                sub = (sub - 1) & full;
            }
            strategy.moves[{node_id, mask}][child] = chosen;
            reconstruct(child, chosen, strategy, gains);
        }
    }
};

} // namespace

std::vector<double> PrefixTree::path_sizes(int node) const {
    std::vector<double> sizes;
    for (int at = node; at != 0; at = nodes[static_cast<std::size_t>(at)].parent) {
        sizes.push_back(nodes[static_cast<std::size_t>(at)].item_size);
    }
    std::reverse(sizes.begin(), sizes.end());
    return sizes;
}

PrefixTree build_prefix_tree(const std::vector<Instance>& family) {
    if (family.empty()) {
        throw DomainError("prefix tree requires a nonempty family");
    }
    if (family.size() > 32) {
        throw TooLarge("prefix tree supports at most 32 instances");
    }

    PrefixTree tree;
    tree.nodes.emplace_back(); // root

    for (std::size_t id = 0; id < family.size(); ++id) {
        int at = 0;
        tree.nodes[0].through |= 1u << id;
        for (double size : family[id].sizes) {
            const PrefixTree::Node& node = tree.nodes[static_cast<std::size_t>(at)];
            int next = -1;
            for (int child : node.children) {
                if (tree.nodes[static_cast<std::size_t>(child)].item_size == size) {
                    next = child;
                    break;
                }
            }
            if (next < 0) {
                next = static_cast<int>(tree.nodes.size());
                PrefixTree::Node child;
                child.parent = at;
                child.item_size = size;
                child.depth = tree.nodes[static_cast<std::size_t>(at)].depth + 1;
                tree.nodes.push_back(child);
                tree.nodes[static_cast<std::size_t>(at)].children.push_back(next);
            }
            at = next;
            tree.nodes[static_cast<std::size_t>(at)].through |= 1u << id;
        }
        if (!tree.nodes[static_cast<std::size_t>(at)].ending.empty()) {
            throw DuplicateInstance("instances '" +
                                    family[tree.nodes[static_cast<std::size_t>(at)]
                                               .ending.front()]
                                        .name +
                                    "' and '" + family[id].name + "' are identical");
        }
        tree.nodes[static_cast<std::size_t>(at)].ending.push_back(static_cast<int>(id));
    }
    return tree;
}

GameResult best_min_performance(const std::vector<Instance>& family, int bits,
                                ExecMode mode) {
    if (family.empty()) {
        throw DomainError("advice game requires a nonempty family");
    }
    if (family.size() > kMaxGameFamily) {
        throw TooLarge("advice game supports at most " +
                       std::to_string(kMaxGameFamily) + " instances");
    }
    if (bits < 0 || bits > kMaxGameBits) {
        throw TooLarge("advice game supports bit budgets 0.." +
                       std::to_string(kMaxGameBits));
    }

    std::vector<Instance> normalized;
    normalized.reserve(family.size());
    for (const Instance& instance : family) {
        if (instance.sizes.size() > kMaxGameItems) {
            throw TooLarge("advice game supports at most " +
                           std::to_string(kMaxGameItems) + " items per instance");
        }
        normalized.push_back(normalize(instance));
    }

    const PrefixTree tree = build_prefix_tree(normalized);
    std::vector<std::vector<double>> paths(tree.nodes.size());
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
        paths[i] = tree.path_sizes(static_cast<int>(i));
    }

    std::vector<double> optima;
    optima.reserve(normalized.size());
    for (const Instance& instance : normalized) {
        optima.push_back(optimal_gain(instance).gain);
    }

    const int nf = static_cast<int>(family.size());
    const std::uint32_t subsets = 1u << nf;

    // The value of every nonempty instance subset as one advice group.
    // Groups are independent, so partitions need only lookups afterwards.
    std::vector<double> group_value(subsets, 0.0);
    if (mode == ExecMode::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t block = 1; block < static_cast<std::int64_t>(subsets); ++block) {
            BlockSolver solver(tree, paths, optima, static_cast<std::uint32_t>(block));
            group_value[static_cast<std::size_t>(block)] = solver.value(0, 0);
        }
    } else {
        for (std::uint32_t block = 1; block < subsets; ++block) {
            BlockSolver solver(tree, paths, optima, block);
            group_value[block] = solver.value(0, 0);
        }
    }

    // Advice strings only partition the family; labels carry no meaning, so
    // partitions are enumerated as restricted growth strings.
    const int max_blocks = std::min(1 << bits, nf);
    GameResult result;
    result.value = -kInf;
    result.optima = optima;

    std::vector<int> labels(static_cast<std::size_t>(nf), 0);
    auto enumerate = [&](auto&& self, int i, int used) -> void {
        if (i == nf) {
            double worst = kInf;
            for (int lbl = 0; lbl < used; ++lbl) {
                std::uint32_t mask = 0;
                for (int j = 0; j < nf; ++j) {
                    if (labels[static_cast<std::size_t>(j)] == lbl) {
                        mask |= 1u << j;
                    }
                }
                worst = std::min(worst, group_value[mask]);
            }
            if (worst > result.value) {
                result.value = worst;
                result.partition = labels;
            }
            return;
        }
        const int label_limit = std::min(used + 1, max_blocks);
        for (int lbl = 0; lbl < label_limit; ++lbl) {
            labels[static_cast<std::size_t>(i)] = lbl;
            self(self, i + 1, std::max(used, lbl + 1));
        }
    };
    enumerate(enumerate, 0, 0);

    // Rebuild strategies and per-instance gains for the winning partition.
    const int used_blocks =
        1 + *std::max_element(result.partition.begin(), result.partition.end());
    result.blocks.assign(static_cast<std::size_t>(used_blocks), 0);
    for (int j = 0; j < nf; ++j) {
        result.blocks[static_cast<std::size_t>(result.partition[static_cast<std::size_t>(j)])] |=
            1u << j;
    }
    result.claimed_gains.assign(static_cast<std::size_t>(nf), 0.0);
    for (std::uint32_t mask : result.blocks) {
        BlockSolver solver(tree, paths, optima, mask);
        solver.value(0, 0);
        GameStrategy strategy;
        solver.reconstruct(0, 0, strategy, result.claimed_gains);
        result.strategies.push_back(std::move(strategy));
    }
    return result;
}

double implied_ratio(double value) {
    if (!(value > 0.0)) {
        throw DomainError("implied ratio requires a positive game value");
    }
    return 1.0 / value;
}

std::string render_game(const std::vector<Instance>& family, const GameResult& result) {
    std::vector<Instance> normalized;
    normalized.reserve(family.size());
    for (const Instance& instance : family) {
        normalized.push_back(normalize(instance));
    }
    const PrefixTree tree = build_prefix_tree(normalized);

    char line[160];
    std::string out;
    std::snprintf(line, sizeof(line), "value %.12g\n", result.value);
    out += line;
    std::snprintf(line, sizeof(line), "implied ratio %.12g\n",
                  implied_ratio(result.value));
    out += line;
    out += "partition:\n";
    for (std::size_t b = 0; b < result.blocks.size(); ++b) {
        out += "  block " + std::to_string(b) + ":";
        for (std::size_t j = 0; j < family.size(); ++j) {
            if ((result.blocks[b] >> j) & 1u) {
                out += " " + family[j].name;
            }
        }
        out += "\n";
    }

    const auto mask_text = [](std::uint32_t mask) {
        std::string text = "{";
        bool first = true;
        for (int i = 0; i < 32; ++i) {
            if ((mask >> i) & 1u) {
                text += (first ? "" : ",") + std::to_string(i);
                first = false;
            }
        }
        return text + "}";
    };

    for (std::size_t b = 0; b < result.strategies.size(); ++b) {
        out += "strategy of block " + std::to_string(b) + ":\n";
        const GameStrategy& strategy = result.strategies[b];
        auto walk = [&](auto&& self, int node_id, std::uint32_t mask, int indent) -> void {
            const auto at = strategy.moves.find({node_id, mask});
            if (at == strategy.moves.end()) {
                return;
            }
            for (const auto& [child, chosen] : at->second) {
                const PrefixTree::Node& node =
                    tree.nodes[static_cast<std::size_t>(child)];
                std::snprintf(line, sizeof(line), "%*son item %d (size %.12g) -> keep %s",
                              indent, "", node.depth - 1, node.item_size,
                              mask_text(chosen).c_str());
                out += line;
                for (int id : node.ending) {
                    if ((result.blocks[b] >> id) & 1u) {
                        out += "  [end of " + family[static_cast<std::size_t>(id)].name + "]";
                    }
                }
                out += "\n";
                self(self, child, chosen, indent + 2);
            }
        };
        walk(walk, 0, 0, 2);
    }
    return out;
}

} // namespace remknap
