#pragma once

#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "umr/graph.hpp"

namespace umr {

// One AMR role with its UMR candidate roles and the selector that resolves
// among them. Role labels are stored without the leading ':'.
struct RoleMapping {
    std::string source_role;
    std::vector<std::string> candidates;
    std::string selector;  // "identity" or "animacy-heuristic"

    friend bool operator==(const RoleMapping&, const RoleMapping&) = default;
};

// Total animacy lookup over concept labels; anything unknown is inanimate.
struct AnimacyLexicon {
    std::set<std::string> animate_concepts;
    std::vector<std::string> animate_suffixes;  // plain suffixes, e.g. "person"

    bool is_animate(const std::string& concept_label) const;

    static AnimacyLexicon defaults();
    static AnimacyLexicon load(const std::string& path);
};

struct RoleDecision {
    std::string source_var;
    std::string role;       // original role
    std::string target_var;
    std::string chosen;     // selected UMR role
    std::vector<std::string> candidates;
    std::string selector;
    std::string rationale;
};

struct ConvertResult {
    SemanticGraph graph;
    std::vector<RoleDecision> decisions;
};

// External per-edge decisions keyed by (sent_id, source var, role, target
// var); lets classifier outputs be replayed over the rule defaults.
using DecisionKey = std::tuple<std::string, std::string, std::string, std::string>;
using DecisionOverrides = std::map<DecisionKey, std::string>;

// Rewrites edge roles per the mapping table. Only edge role labels change;
// nodes, attributes and edge endpoints are untouched. Throws
// ToolError(UnknownSelector) on an unresolvable selector.
ConvertResult convert_roles(const SemanticGraph& graph,
                            const std::vector<RoleMapping>& mappings,
                            const AnimacyLexicon& lexicon,
                            const DecisionOverrides* overrides = nullptr,
                            const std::string& sent_id = "");

// TSV: source_role <TAB> comma-separated candidates <TAB> selector-id.
// Throws ToolError: DuplicateSourceRole, EmptyCandidates, UnknownSelector.
std::vector<RoleMapping> load_mappings(const std::string& path);

// TSV: sent_id <TAB> source var <TAB> role <TAB> target var <TAB> chosen.
DecisionOverrides load_decisions(const std::string& path);

std::string format_decisions(const std::vector<RoleDecision>& decisions);

}  // namespace umr
