#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "umr/conllu.hpp"
#include "umr/graph.hpp"

namespace umr {

// Deterministic UD-to-partial-UMR conversion rules, loadable from a data
// file so that outputs can cite the rule version they were produced with.
struct RuleTable {
    static constexpr const char* kDrop = "-";

    std::map<std::string, std::string> deprel_map;  // deprel -> role label or kDrop
    std::map<std::string, std::string> pos_map;     // UPOS -> policy: predicate|lemma|pronoun|drop
    std::set<std::string> person_pronoun_lemmas;    // PRON lemmas mapped to "person"
    std::string version = "builtin";

    static RuleTable defaults();
    static RuleTable load(const std::string& path);

    // Lookup with subtype fallback: "obl:tmod" falls back to "obl".
    const std::string* role_for(const std::string& deprel) const;
    const std::string* policy_for(const std::string& upos) const;
};

struct BootstrapResult {
    SemanticGraph graph;
    std::map<std::string, int> anchors;  // variable -> 1-based token id
};

// Converts a UD tree into a partial UMR graph: one node per content token,
// edges per deprel mapping, pronoun features as refer-* attributes, conj
// chains grouped under a fresh "and" node. Predicates get the reserved
// placeholder sense "-00" (no sense disambiguation yet); no :aspect or
// :modstr is emitted, that is completion content. Throws
// ToolError(UnmappableRoot) when the root token's UPOS has no concept policy.
BootstrapResult bootstrap_partial(const ConlluSentence& sentence, const RuleTable& rules,
                                  int sent_index = 1);

// One (sentence, partial graph, gold graph) pair for an external
// graph-completion model; serialized one JSON object per line.
struct CompletionRecord {
    std::string sent_id;
    std::string sentence;
    std::string partial;  // single-line PENMAN
    std::string gold;     // single-line PENMAN, may be empty at inference time

    friend bool operator==(const CompletionRecord&, const CompletionRecord&) = default;
};

// Throws ToolError(LengthMismatch) when list lengths differ.
std::vector<CompletionRecord> make_completion_records(
    const std::vector<ConlluSentence>& sentences, const std::vector<SemanticGraph>& partials,
    const std::vector<SemanticGraph>* golds = nullptr);

void write_completion_records(std::ostream& out, const std::vector<CompletionRecord>& records);
std::vector<CompletionRecord> read_completion_records(std::istream& in);

struct IngestFailure {
    std::string sent_id;
    std::string text;
    std::string reason;
};

struct IngestResult {
    std::vector<std::pair<std::string, SemanticGraph>> graphs;  // sent_id, parsed completion
    std::vector<IngestFailure> failures;                        // reported, never dropped silently
};

// Pairs model completions with their records by position (throws
// ToolError(IdMismatch) on a count mismatch), repairs parenthesis defects,
// and parses. Unparseable completions end up in failures.
IngestResult ingest_completions(const std::vector<CompletionRecord>& records,
                                const std::vector<std::string>& completions);

}  // namespace umr
