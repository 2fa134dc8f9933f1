#include "umr/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "json.hpp"

namespace umr {

namespace {

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

// Reserved attribute key standing in for the top triple so that top matching
// rides the per-variable attribute machinery.
constexpr const char* kTopKey = "\x01top";

struct NormTriple {
    TripleKind kind;
    std::string arg1, role, arg2;
    bool quoted;

    auto operator<=>(const NormTriple&) const = default;
};

// Shared normalization applied before any scoring: optional role-label case
// folding and rewriting of "-of" inverse relations as forward edges
// (":consist-of" is a lexical role, not an inverse, and is left alone).
std::vector<NormTriple> normalized_triples(const SemanticGraph& g, bool normalize_case,
                                           bool standardize) {
    std::vector<NormTriple> out;
    for (const Triple& t : triples(g)) {
        NormTriple n{t.kind, t.arg1, t.role, t.arg2, t.quoted};
        if (normalize_case || standardize) n.role = lower(n.role);
        if (n.kind == TripleKind::Relation) {
            std::string probe = lower(n.role);
            if (probe.size() > 3 && probe.ends_with("-of") && probe != "consist-of") {
                std::swap(n.arg1, n.arg2);
                n.role = n.role.substr(0, n.role.size() - 3);
            }
        }
        if (standardize) {
            if (n.kind == TripleKind::Instance || n.kind == TripleKind::Attribute) {
                n.arg2 = lower(n.arg2);
            }
            n.quoted = false;  // strip quotes
        }
        out.push_back(std::move(n));
    }
    if (standardize) {
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
    }
    return out;
}

struct Interner {
    std::unordered_map<std::string, int> ids;
    int intern(const std::string& s) {
        auto [it, inserted] = ids.emplace(s, static_cast<int>(ids.size()));
        return it->second;
    }
};

struct SideData {
    std::vector<std::string> vars;  // index -> name
    std::unordered_map<std::string, int> var_index;
    std::vector<int> concept_id;                            // per var
    std::vector<std::vector<std::pair<int, int>>> attrs;    // per var: (key, count), sorted
    struct Rel {
        int src, role, tgt;
    };
    std::vector<Rel> rels;
    std::vector<std::vector<int>> rels_by_var;  // incident rel indices, deduped
    long triple_count = 0;                      // instances + relations + attributes + top
};

struct MatchProblem {
    SideData pred, gold;
    std::vector<std::unordered_map<int, int>> gold_attr_count;  // per gold var: key -> count
    std::unordered_map<long long, int> gold_rel_count;          // packed key -> count
    std::vector<std::vector<int>> pair_static;  // [p][g]: instance + attribute contribution
    int top_key = -1;

    long long rel_key(int src, int role, int tgt) const {
        return (static_cast<long long>(src) * 1048576 + role) * 1048576 + tgt;
    }
};

SideData build_side(const std::vector<NormTriple>& ts, Interner& concepts, Interner& attr_keys,
                    Interner& roles, int top_key) {
    SideData side;
    side.triple_count = static_cast<long>(ts.size());
    for (const auto& t : ts) {
        if (t.kind == TripleKind::Instance) {
            side.var_index.emplace(t.arg1, static_cast<int>(side.vars.size()));
            side.vars.push_back(t.arg1);
            side.concept_id.push_back(concepts.intern(t.arg2));
        }
    }
    std::vector<std::unordered_map<int, int>> attr_count(side.vars.size());
    side.rels_by_var.assign(side.vars.size(), {});
    for (const auto& t : ts) {
        switch (t.kind) {
            case TripleKind::Instance:
                break;
            case TripleKind::Top: {
                auto it = side.var_index.find(t.arg2);
                if (it != side.var_index.end()) attr_count[it->second][top_key]++;
                break;
            }
            case TripleKind::Attribute: {
                auto it = side.var_index.find(t.arg1);
                if (it == side.var_index.end()) break;
                int key = attr_keys.intern(t.role + "\x01" + t.arg2 + (t.quoted ? "\x01q" : ""));
                attr_count[it->second][key]++;
                break;
            }
            case TripleKind::Relation: {
                auto si = side.var_index.find(t.arg1);
                auto ti = side.var_index.find(t.arg2);
                if (si == side.var_index.end() || ti == side.var_index.end()) break;
                int idx = static_cast<int>(side.rels.size());
                side.rels.push_back({si->second, roles.intern(t.role), ti->second});
                side.rels_by_var[si->second].push_back(idx);
                if (ti->second != si->second) side.rels_by_var[ti->second].push_back(idx);
                break;
            }
        }
    }
    side.attrs.resize(side.vars.size());
    for (std::size_t v = 0; v < side.vars.size(); ++v) {
        for (const auto& [key, cnt] : attr_count[v]) side.attrs[v].push_back({key, cnt});
        std::sort(side.attrs[v].begin(), side.attrs[v].end());
    }
    return side;
}

MatchProblem build_problem(const SemanticGraph& pred, const SemanticGraph& gold,
                           const MetricConfig& cfg, bool standardize) {
    Interner concepts, attr_keys, roles;
    MatchProblem prob;
    prob.top_key = attr_keys.intern(kTopKey);
    auto pt = normalized_triples(pred, cfg.normalize_case, standardize);
    auto gt = normalized_triples(gold, cfg.normalize_case, standardize);
    prob.pred = build_side(pt, concepts, attr_keys, roles, prob.top_key);
    prob.gold = build_side(gt, concepts, attr_keys, roles, prob.top_key);

    prob.gold_attr_count.resize(prob.gold.vars.size());
    for (std::size_t g = 0; g < prob.gold.vars.size(); ++g) {
        for (const auto& [key, cnt] : prob.gold.attrs[g]) prob.gold_attr_count[g][key] = cnt;
    }
    for (const auto& r : prob.gold.rels) prob.gold_rel_count[prob.rel_key(r.src, r.role, r.tgt)]++;

    const std::size_t np = prob.pred.vars.size(), ng = prob.gold.vars.size();
    prob.pair_static.assign(np, std::vector<int>(ng, 0));
    for (std::size_t p = 0; p < np; ++p) {
        for (std::size_t g = 0; g < ng; ++g) {
            int s = prob.pred.concept_id[p] == prob.gold.concept_id[g] ? 1 : 0;
            const auto& gmap = prob.gold_attr_count[g];
            for (const auto& [key, cnt] : prob.pred.attrs[p]) {
                auto it = gmap.find(key);
                if (it != gmap.end()) s += std::min(cnt, it->second);
            }
            prob.pair_static[p][g] = s;
        }
    }
    return prob;
}

// Authoritative matched count for a complete mapping (multiset semantics on
// duplicate triples, so the count is symmetric in pred/gold).
long matched_full(const MatchProblem& prob, const std::vector<int>& m) {
    long total = 0;
    for (std::size_t p = 0; p < prob.pred.vars.size(); ++p) {
        if (m[p] >= 0) total += prob.pair_static[p][m[p]];
    }
    std::unordered_map<long long, int> mapped;
    for (const auto& r : prob.pred.rels) {
        int ms = m[r.src], mt = m[r.tgt];
        if (ms < 0 || mt < 0) continue;
        mapped[prob.rel_key(ms, r.role, mt)]++;
    }
    for (const auto& [key, cnt] : mapped) {
        auto it = prob.gold_rel_count.find(key);
        if (it != prob.gold_rel_count.end()) total += std::min(cnt, it->second);
    }
    return total;
}

// Relation contribution of the rels incident to a set of dirty variables,
// with rels between two dirty variables counted once. Set-membership
// approximation is fine here: it only steers the search, the final score is
// recounted with matched_full.
long rel_local(const MatchProblem& prob, const std::vector<int>& m,
               const std::vector<int>& dirty) {
    long total = 0;
    std::unordered_set<int> seen;
    for (int p : dirty) {
        for (int ridx : prob.pred.rels_by_var[p]) {
            if (!seen.insert(ridx).second) continue;
            const auto& r = prob.pred.rels[ridx];
            int ms = m[r.src], mt = m[r.tgt];
            if (ms < 0 || mt < 0) continue;
            if (prob.gold_rel_count.count(prob.rel_key(ms, r.role, mt))) ++total;
        }
    }
    return total;
}

long local_score(const MatchProblem& prob, const std::vector<int>& m,
                 const std::vector<int>& dirty) {
    long total = rel_local(prob, m, dirty);
    for (int p : dirty) {
        if (m[p] >= 0) total += prob.pair_static[p][m[p]];
    }
    return total;
}

Alignment to_alignment(const MatchProblem& prob, const std::vector<int>& m, long matched) {
    Alignment a;
    a.matched = matched;
    for (std::size_t p = 0; p < m.size(); ++p) {
        if (m[p] >= 0) a.mapping[prob.pred.vars[p]] = prob.gold.vars[m[p]];
    }
    return a;
}

Score score_from_mapping(const MatchProblem& prob, const std::vector<int>& m) {
    long matched = matched_full(prob, m);
    return make_score(matched, prob.pred.triple_count, prob.gold.triple_count,
                      to_alignment(prob, m, matched));
}

// ---------------------------------------------------------------------------
// Exact search: branch and bound over injective assignments of the smaller
// variable set into the larger one.
// ---------------------------------------------------------------------------

class ExactSearch {
public:
    explicit ExactSearch(const MatchProblem& prob) : prob_(prob) {
        const std::size_t np = prob.pred.vars.size();
        order_.resize(np);
        std::iota(order_.begin(), order_.end(), 0);
        // assign high-potential, well-connected variables first
        std::sort(order_.begin(), order_.end(), [&](int a, int b) {
            int pa = max_pair(a) + static_cast<int>(prob_.pred.rels_by_var[a].size());
            int pb = max_pair(b) + static_cast<int>(prob_.pred.rels_by_var[b].size());
            if (pa != pb) return pa > pb;
            return a < b;
        });
        suffix_.assign(np + 1, 0);
        for (std::size_t d = np; d-- > 0;) {
            int p = order_[d];
            suffix_[d] = suffix_[d + 1] + max_pair(p) +
                         static_cast<long>(prob_.pred.rels_by_var[p].size());
        }
        rel_remaining_ = prob.gold_rel_count;
    }

    std::pair<long, std::vector<int>> run() {
        mapping_.assign(prob_.pred.vars.size(), -1);
        used_.assign(prob_.gold.vars.size(), false);
        best_ = -1;
        dfs(0, 0);
        return {best_, best_mapping_};
    }

private:
    int max_pair(int p) const {
        int m = 0;
        for (int v : prob_.pair_static[p]) m = std::max(m, v);
        return m;
    }

    void dfs(std::size_t depth, long current) {
        if (depth == order_.size()) {
            if (current > best_) {
                best_ = current;
                best_mapping_ = mapping_;
            }
            return;
        }
        if (current + suffix_[depth] <= best_) return;
        int p = order_[depth];
        // try gold candidates in descending static-score order
        std::vector<int> cands;
        cands.reserve(used_.size());
        for (std::size_t g = 0; g < used_.size(); ++g) {
            if (!used_[g]) cands.push_back(static_cast<int>(g));
        }
        std::stable_sort(cands.begin(), cands.end(), [&](int a, int b) {
            return prob_.pair_static[p][a] > prob_.pair_static[p][b];
        });
        for (int g : cands) {
            mapping_[p] = g;
            used_[g] = true;
            long gained = prob_.pair_static[p][g];
            // relations whose second endpoint just got assigned
            std::vector<long long> consumed;
            for (int ridx : prob_.pred.rels_by_var[p]) {
                const auto& r = prob_.pred.rels[ridx];
                int ms = mapping_[r.src], mt = mapping_[r.tgt];
                if (ms < 0 || mt < 0) continue;
                long long key = prob_.rel_key(ms, r.role, mt);
                auto it = rel_remaining_.find(key);
                if (it != rel_remaining_.end() && it->second > 0) {
                    --it->second;
                    consumed.push_back(key);
                    ++gained;
                }
            }
            dfs(depth + 1, current + gained);
            for (long long key : consumed) ++rel_remaining_[key];
            used_[g] = false;
            mapping_[p] = -1;
        }
    }

    const MatchProblem& prob_;
    std::vector<int> order_;
    std::vector<long> suffix_;
    std::vector<int> mapping_;
    std::vector<bool> used_;
    std::unordered_map<long long, int> rel_remaining_;
    long best_ = -1;
    std::vector<int> best_mapping_;
};

std::vector<int> invert_mapping(const std::vector<int>& m, std::size_t n_other) {
    std::vector<int> inv(n_other, -1);
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] >= 0) inv[m[i]] = static_cast<int>(i);
    }
    return inv;
}

Score exact_score(const SemanticGraph& pred, const SemanticGraph& gold, const MetricConfig& cfg,
                  bool standardize) {
    MatchProblem prob = build_problem(pred, gold, cfg, standardize);
    const std::size_t np = prob.pred.vars.size(), ng = prob.gold.vars.size();
    if (std::min(np, ng) > static_cast<std::size_t>(cfg.exact_threshold)) {
        throw ToolError(ToolCode::TooLarge,
                        "graphs too large for exhaustive search: min(" + std::to_string(np) +
                            ", " + std::to_string(ng) + ") > " +
                            std::to_string(cfg.exact_threshold));
    }
    std::vector<int> mapping;
    if (np <= ng) {
        mapping = ExactSearch(prob).run().second;
    } else {
        // enumerate from the gold side, then invert
        MatchProblem swapped = build_problem(gold, pred, cfg, standardize);
        mapping = invert_mapping(ExactSearch(swapped).run().second, np);
    }
    if (mapping.empty()) mapping.assign(np, -1);
    return score_from_mapping(prob, mapping);
}

// ---------------------------------------------------------------------------
// Restarted hill climbing
// ---------------------------------------------------------------------------

std::vector<int> greedy_init(const MatchProblem& prob, std::mt19937& rng) {
    const std::size_t np = prob.pred.vars.size(), ng = prob.gold.vars.size();
    std::vector<int> order(np);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        std::size_t da = prob.pred.rels_by_var[a].size(), db = prob.pred.rels_by_var[b].size();
        if (da != db) return da > db;
        return a < b;
    });
    std::vector<int> m(np, -1);
    std::vector<bool> used(ng, false);
    for (int p : order) {
        int best = -1;
        std::vector<int> ties;
        for (std::size_t g = 0; g < ng; ++g) {
            if (used[g]) continue;
            int s = prob.pair_static[p][g];
            if (s > best) {
                best = s;
                ties.clear();
            }
            if (s == best) ties.push_back(static_cast<int>(g));
        }
        if (ties.empty()) continue;
        int g = ties[rng() % ties.size()];
        m[p] = g;
        used[g] = true;
    }
    return m;
}

std::vector<int> random_init(const MatchProblem& prob, std::mt19937& rng) {
    const std::size_t np = prob.pred.vars.size(), ng = prob.gold.vars.size();
    std::vector<int> golds(ng);
    std::iota(golds.begin(), golds.end(), 0);
    std::shuffle(golds.begin(), golds.end(), rng);
    std::vector<int> preds(np);
    std::iota(preds.begin(), preds.end(), 0);
    std::shuffle(preds.begin(), preds.end(), rng);
    std::vector<int> m(np, -1);
    for (std::size_t i = 0; i < std::min(np, ng); ++i) m[preds[i]] = golds[i];
    return m;
}

void climb(const MatchProblem& prob, std::vector<int>& m) {
    const std::size_t np = prob.pred.vars.size(), ng = prob.gold.vars.size();
    std::vector<bool> used(ng, false);
    for (int g : m) {
        if (g >= 0) used[g] = true;
    }
    for (;;) {
        long best_delta = 0;
        int best_p = -1, best_g = -1, best_q = -1;
        // single moves to a free gold variable
        for (std::size_t p = 0; p < np; ++p) {
            std::vector<int> dirty{static_cast<int>(p)};
            long before = local_score(prob, m, dirty);
            int old = m[p];
            for (std::size_t g = 0; g < ng; ++g) {
                if (used[g] || static_cast<int>(g) == old) continue;
                m[p] = static_cast<int>(g);
                long delta = local_score(prob, m, dirty) - before;
                if (delta > best_delta) {
                    best_delta = delta;
                    best_p = static_cast<int>(p);
                    best_g = static_cast<int>(g);
                    best_q = -1;
                }
            }
            m[p] = old;
        }
        // swaps
        for (std::size_t p = 0; p + 1 < np; ++p) {
            for (std::size_t q = p + 1; q < np; ++q) {
                if (m[p] < 0 && m[q] < 0) continue;
                std::vector<int> dirty{static_cast<int>(p), static_cast<int>(q)};
                long before = local_score(prob, m, dirty);
                std::swap(m[p], m[q]);
                long delta = local_score(prob, m, dirty) - before;
                std::swap(m[p], m[q]);
                if (delta > best_delta) {
                    best_delta = delta;
                    best_p = static_cast<int>(p);
                    best_q = static_cast<int>(q);
                    best_g = -1;
                }
            }
        }
        if (best_delta <= 0) break;
        if (best_q >= 0) {
            std::swap(m[best_p], m[best_q]);
        } else {
            if (m[best_p] >= 0) used[m[best_p]] = false;
            m[best_p] = best_g;
            used[best_g] = true;
        }
    }
}

Score hillclimb_score(const MatchProblem& prob, const MetricConfig& cfg,
                      std::vector<int>* mapping_out = nullptr) {
    long best = -1;
    std::vector<int> best_mapping;
    for (int r = 0; r < cfg.restarts; ++r) {
        std::mt19937 rng(cfg.seed + 0x9e3779b9u * static_cast<std::uint32_t>(r + 1));
        std::vector<int> m = (r % 2 == 0) ? greedy_init(prob, rng) : random_init(prob, rng);
        climb(prob, m);
        long matched = matched_full(prob, m);
        if (matched > best) {
            best = matched;
            best_mapping = m;
        }
    }
    if (best_mapping.empty()) best_mapping.assign(prob.pred.vars.size(), -1);
    if (mapping_out) *mapping_out = best_mapping;
    return score_from_mapping(prob, best_mapping);
}

Score best_alignment_score(const SemanticGraph& pred, const SemanticGraph& gold,
                           const MetricConfig& cfg, bool standardize,
                           std::vector<int>* mapping_out, MatchProblem& prob_out) {
    prob_out = build_problem(pred, gold, cfg, standardize);
    const std::size_t np = prob_out.pred.vars.size(), ng = prob_out.gold.vars.size();
    if (std::min(np, ng) <= static_cast<std::size_t>(cfg.exact_threshold)) {
        if (np <= ng) {
            auto [matched, mapping] = ExactSearch(prob_out).run();
            (void)matched;
            if (mapping.empty()) mapping.assign(np, -1);
            if (mapping_out) *mapping_out = mapping;
            return score_from_mapping(prob_out, mapping);
        }
        MatchProblem swapped = build_problem(gold, pred, cfg, standardize);
        auto mapping = invert_mapping(ExactSearch(swapped).run().second, np);
        if (mapping_out) *mapping_out = mapping;
        return score_from_mapping(prob_out, mapping);
    }
    return hillclimb_score(prob_out, cfg, mapping_out);
}

}  // namespace

Score make_score(long matched, long pred_count, long gold_count, Alignment alignment) {
    Score s;
    s.matched = matched;
    s.pred_count = pred_count;
    s.gold_count = gold_count;
    s.precision = pred_count > 0 ? static_cast<double>(matched) / pred_count : 0.0;
    s.recall = gold_count > 0 ? static_cast<double>(matched) / gold_count : 0.0;
    s.f1 = (s.precision + s.recall) > 0.0
               ? 2.0 * s.precision * s.recall / (s.precision + s.recall)
               : 0.0;
    s.alignment = std::move(alignment);
    return s;
}

void MetricConfig::validate() const {
    if (restarts < 1) throw ToolError(ToolCode::BadConfig, "restarts must be >= 1");
    if (exact_threshold < 1) throw ToolError(ToolCode::BadConfig, "exact_threshold must be >= 1");
    if (jobs < 0) throw ToolError(ToolCode::BadConfig, "jobs must be >= 0");
}

Score smatch(const SemanticGraph& pred, const SemanticGraph& gold, const MetricConfig& cfg) {
    cfg.validate();
    MatchProblem prob;
    return best_alignment_score(pred, gold, cfg, false, nullptr, prob);
}

Score smatch_exact(const SemanticGraph& pred, const SemanticGraph& gold,
                   const MetricConfig& cfg) {
    cfg.validate();
    return exact_score(pred, gold, cfg, false);
}

Score smatch_hillclimb(const SemanticGraph& pred, const SemanticGraph& gold,
                       const MetricConfig& cfg) {
    cfg.validate();
    MatchProblem prob = build_problem(pred, gold, cfg, false);
    return hillclimb_score(prob, cfg);
}

FineGrainedScore smatchpp(const SemanticGraph& pred, const SemanticGraph& gold,
                          const MetricConfig& cfg) {
    cfg.validate();
    MatchProblem prob;
    std::vector<int> mapping;
    FineGrainedScore fine;
    fine.overall = best_alignment_score(pred, gold, cfg, true, &mapping, prob);

    // sub-scores under the same global alignment
    long inst_matched = 0;
    for (std::size_t p = 0; p < prob.pred.vars.size(); ++p) {
        if (mapping[p] >= 0 && prob.pred.concept_id[p] == prob.gold.concept_id[mapping[p]]) {
            ++inst_matched;
        }
    }
    long attr_matched = 0, pred_attrs = 0, gold_attrs = 0;
    for (std::size_t p = 0; p < prob.pred.vars.size(); ++p) {
        for (const auto& [key, cnt] : prob.pred.attrs[p]) {
            if (key == prob.top_key) continue;
            pred_attrs += cnt;
            if (mapping[p] < 0) continue;
            const auto& gmap = prob.gold_attr_count[mapping[p]];
            auto it = gmap.find(key);
            if (it != gmap.end()) attr_matched += std::min(cnt, it->second);
        }
    }
    for (const auto& gattrs : prob.gold.attrs) {
        for (const auto& [key, cnt] : gattrs) {
            if (key != prob.top_key) gold_attrs += cnt;
        }
    }
    std::unordered_map<long long, int> mapped_rels;
    for (const auto& r : prob.pred.rels) {
        int ms = mapping[r.src], mt = mapping[r.tgt];
        if (ms >= 0 && mt >= 0) mapped_rels[prob.rel_key(ms, r.role, mt)]++;
    }
    long rel_matched = 0;
    for (const auto& [key, cnt] : mapped_rels) {
        auto it = prob.gold_rel_count.find(key);
        if (it != prob.gold_rel_count.end()) rel_matched += std::min(cnt, it->second);
    }
    Alignment align = fine.overall.alignment;
    fine.instances = make_score(inst_matched, static_cast<long>(prob.pred.vars.size()),
                                static_cast<long>(prob.gold.vars.size()), align);
    fine.relations = make_score(rel_matched, static_cast<long>(prob.pred.rels.size()),
                                static_cast<long>(prob.gold.rels.size()), align);
    fine.attributes = make_score(attr_matched, pred_attrs, gold_attrs, align);
    return fine;
}

Score ancast(const SemanticGraph& pred, const SemanticGraph& gold, const MetricConfig& cfg) {
    cfg.validate();
    MatchProblem prob = build_problem(pred, gold, cfg, false);
    const std::size_t np = prob.pred.vars.size(), ng = prob.gold.vars.size();
    std::vector<int> m(np, -1);
    std::vector<bool> used(ng, false);

    // 1) anchors: concepts occurring exactly once on both sides
    std::unordered_map<int, std::vector<int>> by_concept_p, by_concept_g;
    for (std::size_t p = 0; p < np; ++p) by_concept_p[prob.pred.concept_id[p]].push_back(p);
    for (std::size_t g = 0; g < ng; ++g) by_concept_g[prob.gold.concept_id[g]].push_back(g);
    for (const auto& [cid, ps] : by_concept_p) {
        auto it = by_concept_g.find(cid);
        if (ps.size() == 1 && it != by_concept_g.end() && it->second.size() == 1) {
            m[ps[0]] = it->second[0];
            used[it->second[0]] = true;
        }
    }

    auto broadcast_score = [&](int p, int g) {
        int s = 0;
        std::unordered_set<int> seen;
        for (int ridx : prob.pred.rels_by_var[p]) {
            if (!seen.insert(ridx).second) continue;
            const auto& r = prob.pred.rels[ridx];
            if (r.src == p && m[r.tgt] >= 0) {
                if (prob.gold_rel_count.count(prob.rel_key(g, r.role, m[r.tgt]))) ++s;
            }
            if (r.tgt == p && m[r.src] >= 0) {
                if (prob.gold_rel_count.count(prob.rel_key(m[r.src], r.role, g))) ++s;
            }
        }
        return s;
    };
    auto profile_equal = [&](int p, int g) {
        const auto& pa = prob.pred.attrs[p];
        const auto& ga = prob.gold.attrs[g];
        return pa == ga;
    };

    // 2) broadcast: repeatedly adopt the strongest neighbor pair
    for (;;) {
        int best_s = 0, best_p = -1, best_g = -1;
        bool best_ceq = false, best_peq = false, best_neq = false;
        for (std::size_t p = 0; p < np; ++p) {
            if (m[p] >= 0) continue;
            for (std::size_t g = 0; g < ng; ++g) {
                if (used[g]) continue;
                int s = broadcast_score(static_cast<int>(p), static_cast<int>(g));
                if (s < 1) continue;
                bool ceq = prob.pred.concept_id[p] == prob.gold.concept_id[g];
                bool peq = profile_equal(static_cast<int>(p), static_cast<int>(g));
                bool neq = prob.pred.vars[p] == prob.gold.vars[g];
                auto cand = std::make_tuple(s, ceq, peq, neq);
                auto best = std::make_tuple(best_s, best_ceq, best_peq, best_neq);
                if (cand > best) {
                    best_s = s;
                    best_ceq = ceq;
                    best_peq = peq;
                    best_neq = neq;
                    best_p = static_cast<int>(p);
                    best_g = static_cast<int>(g);
                }
            }
        }
        if (best_p < 0) break;
        m[best_p] = best_g;
        used[best_g] = true;
    }

    // 3) leftovers: pair remaining variables with equal concepts, preferring
    // equal attribute profiles, in variable-name order
    std::vector<int> rest;
    for (std::size_t p = 0; p < np; ++p) {
        if (m[p] < 0) rest.push_back(static_cast<int>(p));
    }
    std::sort(rest.begin(), rest.end(),
              [&](int a, int b) { return prob.pred.vars[a] < prob.pred.vars[b]; });
    std::vector<int> gold_order(ng);
    std::iota(gold_order.begin(), gold_order.end(), 0);
    std::sort(gold_order.begin(), gold_order.end(),
              [&](int a, int b) { return prob.gold.vars[a] < prob.gold.vars[b]; });
    for (int p : rest) {
        int pick = -1, pick_rank = -1;
        for (int g : gold_order) {
            if (used[g] || prob.pred.concept_id[p] != prob.gold.concept_id[g]) continue;
            int rank = (profile_equal(p, g) ? 2 : 0) +
                       (prob.pred.vars[p] == prob.gold.vars[g] ? 1 : 0);
            if (rank > pick_rank) {
                pick = g;
                pick_rank = rank;
                if (rank == 3) break;
            }
        }
        if (pick >= 0) {
            m[p] = pick;
            used[pick] = true;
        }
    }
    return score_from_mapping(prob, m);
}

// ---------------------------------------------------------------------------
// Corpus evaluation
// ---------------------------------------------------------------------------

const std::vector<std::string> kAllMetrics = {"smatch", "smatchpp", "ancast"};

namespace {

PairOutcome eval_one(const EvalPair& pair, const MetricConfig& cfg,
                     const std::vector<std::string>& metrics) {
    PairOutcome out;
    out.id = pair.id;
    out.tags = pair.tags;
    for (const auto& metric : metrics) {
        if (pair.unscorable) {
            out.scores[metric] = make_score(0, 0, pair.unscorable_gold_count);
            continue;
        }
        if (metric == "smatch") {
            out.scores[metric] = smatch(pair.pred, pair.gold, cfg);
        } else if (metric == "smatchpp") {
            out.scores[metric] = smatchpp(pair.pred, pair.gold, cfg).overall;
        } else if (metric == "ancast") {
            out.scores[metric] = ancast(pair.pred, pair.gold, cfg);
        } else {
            throw ToolError(ToolCode::BadConfig, "unknown metric: " + metric);
        }
    }
    return out;
}

ScoreReport aggregate(std::vector<PairOutcome> outcomes,
                      const std::vector<std::string>& metrics) {
    ScoreReport report;
    std::set<std::string> categories;
    for (const auto& o : outcomes) categories.insert(o.tags.begin(), o.tags.end());
    std::vector<std::string> cat_order{"all"};
    cat_order.insert(cat_order.end(), categories.begin(), categories.end());
    for (const auto& metric : metrics) {
        for (const auto& cat : cat_order) {
            ReportRow row;
            row.metric = metric;
            row.category = cat;
            for (const auto& o : outcomes) {
                if (cat != "all" && !o.tags.count(cat)) continue;
                const Score& s = o.scores.at(metric);
                row.matched += s.matched;
                row.pred_count += s.pred_count;
                row.gold_count += s.gold_count;
                row.n_pairs += 1;
            }
            Score micro = make_score(row.matched, row.pred_count, row.gold_count);
            row.precision = micro.precision;
            row.recall = micro.recall;
            row.f1 = micro.f1;
            report.rows.push_back(row);
        }
    }
    report.pairs = std::move(outcomes);
    return report;
}

}  // namespace

ScoreReport corpus_eval_serial(const std::vector<EvalPair>& pairs, const MetricConfig& cfg,
                               const std::vector<std::string>& metrics) {
    cfg.validate();
    if (pairs.empty()) throw ToolError(ToolCode::EmptyCorpus, "no pairs to evaluate");
    std::vector<PairOutcome> outcomes;
    outcomes.reserve(pairs.size());
    for (const auto& pair : pairs) outcomes.push_back(eval_one(pair, cfg, metrics));
    return aggregate(std::move(outcomes), metrics);
}

ScoreReport corpus_eval_parallel(const std::vector<EvalPair>& pairs, const MetricConfig& cfg,
                                 const std::vector<std::string>& metrics, int jobs) {
    cfg.validate();
    if (pairs.empty()) throw ToolError(ToolCode::EmptyCorpus, "no pairs to evaluate");
    std::vector<PairOutcome> outcomes(pairs.size());
#ifdef _OPENMP
    int threads = jobs > 0 ? jobs : omp_get_max_threads();
    std::string first_error;
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(pairs.size()); ++i) {
        try {
            outcomes[i] = eval_one(pairs[i], cfg, metrics);
        } catch (const std::exception& e) {
#pragma omp critical
            if (first_error.empty()) first_error = e.what();
        }
    }
    if (!first_error.empty()) throw ToolError(ToolCode::BadConfig, first_error);
#else
    (void)jobs;
    for (std::size_t i = 0; i < pairs.size(); ++i) outcomes[i] = eval_one(pairs[i], cfg, metrics);
#endif
    return aggregate(std::move(outcomes), metrics);
}

ScoreReport corpus_eval(const std::vector<EvalPair>& pairs, const MetricConfig& cfg,
                        const std::vector<std::string>& metrics) {
    if (cfg.jobs == 1) return corpus_eval_serial(pairs, cfg, metrics);
    return corpus_eval_parallel(pairs, cfg, metrics, cfg.jobs);
}

std::string format_report_table(const ScoreReport& report) {
    std::ostringstream out;
    out << std::left << std::setw(10) << "metric" << std::setw(14) << "category" << std::right
        << std::setw(10) << "precision" << std::setw(10) << "recall" << std::setw(10) << "f1"
        << std::setw(9) << "n_pairs" << "\n";
    out << std::string(63, '-') << "\n";
    out << std::fixed << std::setprecision(2);
    for (const auto& row : report.rows) {
        out << std::left << std::setw(10) << row.metric << std::setw(14) << row.category
            << std::right << std::setw(10) << row.precision * 100.0 << std::setw(10)
            << row.recall * 100.0 << std::setw(10) << row.f1 * 100.0 << std::setw(9)
            << row.n_pairs << "\n";
    }
    return out.str();
}

std::string report_to_json(const ScoreReport& report, bool include_pairs) {
    nlohmann::json doc;
    doc["rows"] = nlohmann::json::array();
    for (const auto& row : report.rows) {
        doc["rows"].push_back({{"metric", row.metric},
                               {"category", row.category},
                               {"precision", row.precision},
                               {"recall", row.recall},
                               {"f1", row.f1},
                               {"matched", row.matched},
                               {"pred_count", row.pred_count},
                               {"gold_count", row.gold_count},
                               {"n_pairs", row.n_pairs}});
    }
    doc["pairs"] = nlohmann::json::array();
    if (include_pairs) {
        for (const auto& pair : report.pairs) {
            nlohmann::json scores;
            for (const auto& [metric, s] : pair.scores) {
                scores[metric] = {{"precision", s.precision}, {"recall", s.recall},
                                  {"f1", s.f1},               {"matched", s.matched},
                                  {"pred_count", s.pred_count}, {"gold_count", s.gold_count}};
            }
            doc["pairs"].push_back({{"id", pair.id},
                                    {"tags", std::vector<std::string>(pair.tags.begin(),
                                                                      pair.tags.end())},
                                    {"scores", scores}});
        }
    }
    return doc.dump(2);
}

}  // namespace umr
