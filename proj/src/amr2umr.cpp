#include "umr/amr2umr.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace umr {

namespace {

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

const std::set<std::string> kSelectors = {"identity", "animacy-heuristic"};

// Predicates whose arguments keep the motion reading of a split role.
const std::vector<std::string> kMotionPrefixes = {
    "go-",     "come-",  "move-",  "walk-",  "run-",    "travel-", "leave-",
    "arrive-", "depart-", "return-", "fly-",  "drive-",  "send-",   "bring-",
    "take-",   "carry-",  "throw-"};

bool is_motion_predicate(const std::string& concept_label) {
    std::string c = lower(concept_label);
    return std::any_of(kMotionPrefixes.begin(), kMotionPrefixes.end(),
                       [&](const std::string& p) { return c.rfind(p, 0) == 0; });
}

std::string strip_colon(std::string role) {
    if (!role.empty() && role[0] == ':') role.erase(0, 1);
    return role;
}

}  // namespace

bool AnimacyLexicon::is_animate(const std::string& concept_label) const {
    std::string c = lower(concept_label);
    // sense suffixes ("person-01") do not change animacy
    auto dash = c.find_last_of('-');
    std::string base = c;
    if (dash != std::string::npos &&
        c.find_first_not_of("0123456789", dash + 1) == std::string::npos) {
        base = c.substr(0, dash);
    }
    if (animate_concepts.count(base) || animate_concepts.count(c)) return true;
    for (const auto& suffix : animate_suffixes) {
        if (base.size() >= suffix.size() && base.ends_with(suffix)) return true;
    }
    return false;
}

AnimacyLexicon AnimacyLexicon::defaults() {
    AnimacyLexicon lex;
    lex.animate_concepts = {"person", "i",     "you",   "we",     "they",   "he",
                            "she",    "organization", "animal", "family", "people",
                            "child",  "man",   "woman", "team",   "company"};
    lex.animate_suffixes = {"person"};
    return lex;
}

AnimacyLexicon AnimacyLexicon::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ToolError(ToolCode::IoError, "cannot open animacy lexicon: " + path);
    AnimacyLexicon lex;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("suffix\t", 0) == 0) {
            lex.animate_suffixes.push_back(lower(line.substr(7)));
        } else {
            lex.animate_concepts.insert(lower(line));
        }
    }
    return lex;
}

std::vector<RoleMapping> load_mappings(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ToolError(ToolCode::IoError, "cannot open mapping table: " + path);
    std::vector<RoleMapping> mappings;
    std::set<std::string> seen;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cols;
        std::stringstream ss(line);
        std::string col;
        while (std::getline(ss, col, '\t')) cols.push_back(col);
        if (cols.size() != 3) {
            throw ToolError(ToolCode::IoError, path + ":" + std::to_string(lineno) +
                                                   ": expected 3 tab-separated columns");
        }
        RoleMapping m;
        m.source_role = strip_colon(cols[0]);
        std::stringstream cands(cols[1]);
        while (std::getline(cands, col, ',')) {
            if (!col.empty()) m.candidates.push_back(strip_colon(col));
        }
        m.selector = cols[2];
        if (m.source_role.empty() || m.candidates.empty()) {
            throw ToolError(ToolCode::EmptyCandidates,
                            path + ":" + std::to_string(lineno) + ": empty candidate list");
        }
        if (!kSelectors.count(m.selector)) {
            throw ToolError(ToolCode::UnknownSelector, path + ":" + std::to_string(lineno) +
                                                           ": unknown selector " + m.selector);
        }
        if (!seen.insert(m.source_role).second) {
            throw ToolError(ToolCode::DuplicateSourceRole,
                            path + ":" + std::to_string(lineno) + ": duplicate source role :" +
                                m.source_role);
        }
        mappings.push_back(std::move(m));
    }
    return mappings;
}

DecisionOverrides load_decisions(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ToolError(ToolCode::IoError, "cannot open decisions file: " + path);
    DecisionOverrides overrides;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cols;
        std::stringstream ss(line);
        std::string col;
        while (std::getline(ss, col, '\t')) cols.push_back(col);
        if (cols.size() != 5) {
            throw ToolError(ToolCode::IoError, path + ":" + std::to_string(lineno) +
                                                   ": expected 5 tab-separated columns");
        }
        overrides[{cols[0], cols[1], strip_colon(cols[2]), cols[3]}] = strip_colon(cols[4]);
    }
    return overrides;
}

ConvertResult convert_roles(const SemanticGraph& graph, const std::vector<RoleMapping>& mappings,
                            const AnimacyLexicon& lexicon, const DecisionOverrides* overrides,
                            const std::string& sent_id) {
    std::map<std::string, const RoleMapping*> by_role;
    for (const auto& m : mappings) {
        if (!kSelectors.count(m.selector)) {
            throw ToolError(ToolCode::UnknownSelector, "unknown selector " + m.selector);
        }
        by_role[m.source_role] = &m;
    }

    ConvertResult result;
    result.graph.set_top(graph.top());
    for (const auto& v : graph.variables()) result.graph.add_node(v, graph.concept_of(v));

    // rebuild children in original order so serialization is unchanged
    struct Item {
        int ord;
        bool is_edge;
        std::size_t index;
    };
    std::vector<Item> items;
    for (std::size_t i = 0; i < graph.edges().size(); ++i) {
        items.push_back({graph.edges()[i].ord, true, i});
    }
    for (std::size_t i = 0; i < graph.attributes().size(); ++i) {
        items.push_back({graph.attributes()[i].ord, false, i});
    }
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
        return a.ord < b.ord;
    });

    for (const auto& item : items) {
        if (!item.is_edge) {
            const Attribute& a = graph.attributes()[item.index];
            result.graph.add_attribute(a.source, a.role, a.value, a.quoted);
            continue;
        }
        const Edge& e = graph.edges()[item.index];
        auto it = by_role.find(e.role);
        if (it == by_role.end()) {
            result.graph.add_edge(e.source, e.role, e.target);
            continue;
        }
        const RoleMapping& m = *it->second;
        RoleDecision dec;
        dec.source_var = e.source;
        dec.role = e.role;
        dec.target_var = e.target;
        dec.candidates = m.candidates;
        dec.selector = m.selector;

        const std::string* forced = nullptr;
        if (overrides) {
            auto ov = overrides->find({sent_id, e.source, e.role, e.target});
            if (ov != overrides->end()) forced = &ov->second;
        }
        if (forced) {
            dec.chosen = *forced;
            dec.rationale = "external decision";
        } else if (m.selector == "identity") {
            dec.chosen = m.candidates.front();
            dec.rationale = "identity mapping";
        } else {  // animacy-heuristic
            const std::string& target_concept = graph.concept_of(e.target);
            const std::string& source_concept = graph.concept_of(e.source);
            if (lexicon.is_animate(target_concept)) {
                dec.chosen = m.candidates.front();
                dec.rationale = "target '" + target_concept + "' is animate";
            } else if (is_motion_predicate(source_concept)) {
                dec.chosen = m.candidates.front();
                dec.rationale = "motion predicate '" + source_concept + "'";
            } else if (m.candidates.size() > 1) {
                dec.chosen = m.candidates[1];
                dec.rationale = "inanimate, non-motion default";
            } else {
                dec.chosen = m.candidates.front();
                dec.rationale = "single candidate";
            }
        }
        result.graph.add_edge(e.source, dec.chosen, e.target);
        result.decisions.push_back(std::move(dec));
    }
    return result;
}

std::string format_decisions(const std::vector<RoleDecision>& decisions) {
    std::ostringstream out;
    for (const auto& d : decisions) {
        std::string cands;
        for (const auto& c : d.candidates) {
            if (!cands.empty()) cands += ",";
            cands += ":" + c;
        }
        out << d.source_var << "\t:" << d.role << "\t" << d.target_var << "\t:" << d.chosen
            << "\t" << cands << "\t" << d.selector << "\t" << d.rationale << "\n";
    }
    return out.str();
}

}  // namespace umr
