#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "umr/graph.hpp"

namespace umr {

// Injective partial mapping from predicted variables to gold variables,
// plus the number of triples matched under it.
struct Alignment {
    std::map<std::string, std::string> mapping;
    long matched = 0;
};

struct Score {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    long matched = 0;
    long pred_count = 0;
    long gold_count = 0;
    Alignment alignment;
};

Score make_score(long matched, long pred_count, long gold_count, Alignment alignment = {});

struct MetricConfig {
    int restarts = 4;          // hill-climbing restarts
    int exact_threshold = 8;   // max variable count (smaller side) for exhaustive search
    bool normalize_case = true;  // role-label matching ignores case (:Arg0 == :ARG0)
    std::uint32_t seed = 0;
    int jobs = 1;              // corpus_eval worker count; 0 = all hardware threads

    void validate() const;     // throws ToolError(BadConfig)
};

// Triple F-score under the best variable alignment. Uses the exhaustive
// oracle when the smaller graph fits under cfg.exact_threshold, otherwise
// seeded restarted hill climbing. Deterministic given cfg.seed.
Score smatch(const SemanticGraph& pred, const SemanticGraph& gold, const MetricConfig& cfg = {});

// Globally optimal score by branch-and-bound enumeration of injective
// variable mappings. Throws ToolError(TooLarge) when min(|pred vars|,
// |gold vars|) exceeds cfg.exact_threshold.
Score smatch_exact(const SemanticGraph& pred, const SemanticGraph& gold,
                   const MetricConfig& cfg = {});

// The hill climber itself, regardless of graph size: greedy concept-match
// initialization plus single-move/swap best-improvement climbing, restarted
// cfg.restarts times with distinct seeds.
Score smatch_hillclimb(const SemanticGraph& pred, const SemanticGraph& gold,
                       const MetricConfig& cfg = {});

// SMATCH++-style result: one global score plus per-kind sub-scores computed
// under the same (single) best alignment. Inputs go through a
// standardization pass first: lowercasing, quote stripping, deduplication.
struct FineGrainedScore {
    Score overall;
    Score instances;
    Score relations;
    Score attributes;
};

FineGrainedScore smatchpp(const SemanticGraph& pred, const SemanticGraph& gold,
                          const MetricConfig& cfg = {});

// Anchor-broadcast alignment score. Seeds the alignment with variable pairs
// whose concepts match uniquely on both sides, then iteratively extends it
// to neighbor pairs scored by the number of role-matched already-aligned
// neighbors (ties: concept equality, then attribute-profile equality, then
// lexicographic). Remaining variables are paired by equal concept in
// lexicographic order. Deterministic; no randomness involved.
Score ancast(const SemanticGraph& pred, const SemanticGraph& gold, const MetricConfig& cfg = {});

// ---------------------------------------------------------------------------
// Corpus-level evaluation
// ---------------------------------------------------------------------------

struct EvalPair {
    std::string id;
    SemanticGraph pred;
    SemanticGraph gold;
    std::set<std::string> tags;  // category tags, e.g. "minecraft"
    // Pairs flagged unscorable contribute matched=0, pred_count=0 and the
    // gold triple count; used by the CLI's --on-unparseable zero mode.
    bool unscorable = false;
    long unscorable_gold_count = 0;
};

struct PairOutcome {
    std::string id;
    std::set<std::string> tags;
    std::map<std::string, Score> scores;  // metric name -> score
};

struct ReportRow {
    std::string metric;
    std::string category;   // "all" or a tag
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    long matched = 0;
    long pred_count = 0;
    long gold_count = 0;
    int n_pairs = 0;

    friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct ScoreReport {
    std::vector<ReportRow> rows;      // per metric x category, micro-averaged
    std::vector<PairOutcome> pairs;   // per-pair scores in input order
};

extern const std::vector<std::string> kAllMetrics;  // {"smatch","smatchpp","ancast"}

// Micro-averaged evaluation of a pair list: per metric, one "all" row plus
// one row per category tag. Throws ToolError(EmptyCorpus) on an empty list.
// corpus_eval dispatches on cfg.jobs; the serial path is the reference
// implementation, the parallel path fans pairs out to an OpenMP loop and
// aggregates order-independently. Both produce identical reports.
ScoreReport corpus_eval(const std::vector<EvalPair>& pairs, const MetricConfig& cfg,
                        const std::vector<std::string>& metrics = kAllMetrics);
ScoreReport corpus_eval_serial(const std::vector<EvalPair>& pairs, const MetricConfig& cfg,
                               const std::vector<std::string>& metrics = kAllMetrics);
ScoreReport corpus_eval_parallel(const std::vector<EvalPair>& pairs, const MetricConfig& cfg,
                                 const std::vector<std::string>& metrics = kAllMetrics,
                                 int jobs = 0);

// Line-oriented table (percent scores, two decimals) and structured JSON.
std::string format_report_table(const ScoreReport& report);
std::string report_to_json(const ScoreReport& report, bool include_pairs = true);

}  // namespace umr
