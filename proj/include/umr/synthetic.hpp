#pragma once

#include <cstdint>
#include <random>

#include "umr/graph.hpp"

namespace umr {

// Seeded random graph generation for fuzzing and benchmarks.
struct SyntheticOptions {
    int min_nodes = 1;
    int max_nodes = 8;
    double reentrancy_prob = 0.25;  // chance of one extra non-tree edge per node
    double attribute_prob = 0.45;
    double quoted_prob = 0.15;
};

SemanticGraph random_graph(std::mt19937& rng, const SyntheticOptions& opts = {});

// A structural perturbation of `base` with renamed variables: some roles,
// concepts and attributes changed, a leaf possibly dropped or added. Useful
// for producing realistic pred/gold pairs.
SemanticGraph perturb_graph(const SemanticGraph& base, std::mt19937& rng,
                            double mutation_prob = 0.25);

}  // namespace umr
