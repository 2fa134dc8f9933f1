#include "umr/synthetic.hpp"

#include <array>
#include <string>
#include <vector>

namespace umr {

namespace {

const std::array<const char*, 14> kConcepts = {
    "person", "go-01",  "city",   "dog",  "run-02", "thing", "house",
    "eat-01", "water",  "street", "and",  "walk-01", "sky",  "blue"};
const std::array<const char*, 8> kRoles = {"ARG0", "ARG1", "ARG2", "mod",
                                           "op1",  "time", "source", "poss"};
const std::array<const char*, 6> kAttrRoles = {"aspect",       "refer-number", "polarity",
                                               "mode",         "refer-person", "value"};
const std::array<const char*, 6> kAttrValues = {"Activity", "Singular", "Plural",
                                                "expressive", "3rd", "-"};

template <typename T, std::size_t N>
const char* pick(std::mt19937& rng, const std::array<T, N>& pool) {
    return pool[rng() % N];
}

}  // namespace

SemanticGraph random_graph(std::mt19937& rng, const SyntheticOptions& opts) {
    int span = opts.max_nodes - opts.min_nodes + 1;
    int n = opts.min_nodes + static_cast<int>(rng() % static_cast<unsigned>(span));
    SemanticGraph g;
    std::vector<std::string> vars;
    for (int i = 0; i < n; ++i) {
        std::string var = "v" + std::to_string(i);
        vars.push_back(var);
        g.add_node(var, pick(rng, kConcepts));
    }
    g.set_top(vars[0]);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (int i = 1; i < n; ++i) {
        int parent = static_cast<int>(rng() % static_cast<unsigned>(i));
        g.add_edge(vars[parent], pick(rng, kRoles), vars[i]);
    }
    for (int i = 0; i < n; ++i) {
        if (n > 1 && coin(rng) < opts.reentrancy_prob) {
            int src = static_cast<int>(rng() % static_cast<unsigned>(n));
            int tgt = static_cast<int>(rng() % static_cast<unsigned>(n));
            if (src != tgt) g.add_edge(vars[src], pick(rng, kRoles), vars[tgt]);
        }
        if (coin(rng) < opts.attribute_prob) {
            bool quoted = coin(rng) < opts.quoted_prob;
            std::string value = pick(rng, kAttrValues);
            if (quoted) value = ":" + value;  // exercise values needing quotes
            g.add_attribute(vars[i], pick(rng, kAttrRoles), value, quoted);
        }
    }
    return g;
}

SemanticGraph perturb_graph(const SemanticGraph& base, std::mt19937& rng,
                            double mutation_prob) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    SemanticGraph g;
    std::map<std::string, std::string> rename;
    const auto& vars = base.variables();
    for (std::size_t i = 0; i < vars.size(); ++i) {
        rename[vars[i]] = "w" + std::to_string(i);
    }
    bool drop_leaf = vars.size() > 1 && coin(rng) < mutation_prob;
    // a leaf = a variable that is never an edge source
    std::string dropped;
    if (drop_leaf) {
        std::set<std::string> sources;
        for (const auto& e : base.edges()) sources.insert(e.source);
        std::vector<std::string> leaves;
        for (const auto& v : vars) {
            if (!sources.count(v) && v != base.top()) leaves.push_back(v);
        }
        if (!leaves.empty()) dropped = leaves[rng() % leaves.size()];
    }
    for (const auto& v : vars) {
        if (v == dropped) continue;
        std::string concept_label = base.concept_of(v);
        if (coin(rng) < mutation_prob) concept_label = pick(rng, kConcepts);
        g.add_node(rename[v], concept_label);
    }
    g.set_top(rename[base.top()]);
    for (const auto& e : base.edges()) {
        if (e.source == dropped || e.target == dropped) continue;
        std::string role = e.role;
        if (coin(rng) < mutation_prob) role = pick(rng, kRoles);
        g.add_edge(rename[e.source], role, rename[e.target]);
    }
    for (const auto& a : base.attributes()) {
        if (a.source == dropped) continue;
        if (coin(rng) < mutation_prob) continue;  // drop attribute
        g.add_attribute(rename[a.source], a.role, a.value, a.quoted);
    }
    return g;
}

}  // namespace umr
