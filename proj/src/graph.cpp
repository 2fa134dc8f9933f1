#include "umr/graph.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <regex>
#include <sstream>

namespace umr {

const char* to_string(ParseCode code) {
    switch (code) {
        case ParseCode::UnbalancedParens: return "UnbalancedParens";
        case ParseCode::DuplicateVariable: return "DuplicateVariable";
        case ParseCode::UndefinedVariable: return "UndefinedVariable";
        case ParseCode::EmptyInput: return "EmptyInput";
        case ParseCode::UnexpectedToken: return "UnexpectedToken";
        case ParseCode::MissingConcept: return "MissingConcept";
        case ParseCode::UnterminatedString: return "UnterminatedString";
    }
    return "?";
}

const char* to_string(ToolCode code) {
    switch (code) {
        case ToolCode::TooLarge: return "TooLarge";
        case ToolCode::LengthMismatch: return "LengthMismatch";
        case ToolCode::IdMismatch: return "IdMismatch";
        case ToolCode::EmptyCorpus: return "EmptyCorpus";
        case ToolCode::RatiosInvalid: return "RatiosInvalid";
        case ToolCode::DuplicateSourceRole: return "DuplicateSourceRole";
        case ToolCode::EmptyCandidates: return "EmptyCandidates";
        case ToolCode::UnknownSelector: return "UnknownSelector";
        case ToolCode::UnmappableRoot: return "UnmappableRoot";
        case ToolCode::CountMismatch: return "CountMismatch";
        case ToolCode::BadConfig: return "BadConfig";
        case ToolCode::IoError: return "IoError";
    }
    return "?";
}

const std::string& SemanticGraph::concept_of(const std::string& var) const {
    static const std::string empty;
    auto it = concepts_.find(var);
    return it == concepts_.end() ? empty : it->second;
}

void SemanticGraph::add_node(const std::string& var, const std::string& concept_label) {
    if (!concepts_.emplace(var, concept_label).second) {
        throw Error("variable defined twice: " + var);
    }
    var_order_.push_back(var);
}

void SemanticGraph::add_edge(const std::string& source, const std::string& role,
                             const std::string& target) {
    edges_.push_back(Edge{source, role, target, next_ord_++});
}

void SemanticGraph::add_attribute(const std::string& source, const std::string& role,
                                  const std::string& value, bool quoted) {
    attributes_.push_back(Attribute{source, role, value, quoted, next_ord_++});
}

std::vector<std::string> SemanticGraph::unreachable_variables() const {
    std::set<std::string> seen;
    if (has_var(top_)) {
        std::queue<std::string> frontier;
        frontier.push(top_);
        seen.insert(top_);
        // undirected adjacency
        std::map<std::string, std::vector<std::string>> adj;
        for (const auto& e : edges_) {
            adj[e.source].push_back(e.target);
            adj[e.target].push_back(e.source);
        }
        while (!frontier.empty()) {
            std::string v = frontier.front();
            frontier.pop();
            for (const auto& n : adj[v]) {
                if (has_var(n) && seen.insert(n).second) frontier.push(n);
            }
        }
    }
    std::vector<std::string> out;
    for (const auto& v : var_order_) {
        if (!seen.count(v)) out.push_back(v);
    }
    return out;
}

std::string to_string(const Triple& t) {
    std::string a2 = t.quoted ? "\"" + t.arg2 + "\"" : t.arg2;
    return t.arg1 + " :" + t.role + " " + a2;
}

std::vector<Triple> triples(const SemanticGraph& g) {
    std::vector<Triple> out;
    out.reserve(1 + g.node_count() + g.edges().size() + g.attributes().size());
    out.push_back(Triple{TripleKind::Top, "TOP", "top", g.top(), false});
    for (const auto& v : g.variables()) {
        out.push_back(Triple{TripleKind::Instance, v, "instance", g.concept_of(v), false});
    }
    for (const auto& e : g.edges()) {
        out.push_back(Triple{TripleKind::Relation, e.source, e.role, e.target, false});
    }
    for (const auto& a : g.attributes()) {
        out.push_back(Triple{TripleKind::Attribute, a.source, a.role, a.value, a.quoted});
    }
    return out;
}

std::set<Triple> triple_set(const SemanticGraph& g) {
    auto v = triples(g);
    return std::set<Triple>(v.begin(), v.end());
}

UmrVocabulary UmrVocabulary::defaults() {
    UmrVocabulary v;
    v.values["aspect"] = {"Habitual",  "Imperfective", "Process",  "Atelic-Process",
                          "Perfective", "State",        "Activity", "Endeavor",
                          "Performance", "Reversible-State", "Irreversible-State",
                          "Inherent-State", "Point-State", "Undirected-Activity",
                          "Directed-Activity", "Semelfactive", "Undirected-Endeavor",
                          "Directed-Endeavor", "Incremental-Accomplishment",
                          "Nonincremental-Accomplishment", "Directed-Achievement",
                          "Reversible-Directed-Achievement", "Irreversible-Directed-Achievement"};
    v.values["modstr"] = {"FullAff", "PrtAff", "NeutAff", "FullNeg", "PrtNeg", "NeutNeg"};
    v.values["refer-number"] = {"Singular", "Dual",       "Trial",        "Paucal",
                                "Plural",   "Non-Dual",   "Non-Trial",    "Non-Paucal",
                                "Greater-Plural", "Non-Singular"};
    v.values["refer-person"] = {"1st", "2nd", "3rd", "4th", "Exclusive", "Inclusive",
                                "Non-1st", "Non-3rd"};
    v.values["mode"] = {"expressive", "imperative", "interrogative"};
    return v;
}

UmrVocabulary UmrVocabulary::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ToolError(ToolCode::IoError, "cannot open vocabulary file: " + path);
    UmrVocabulary v;
    v.values.clear();
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos) {
            throw ToolError(ToolCode::IoError, path + ":" + std::to_string(lineno) +
                                                   ": expected '<role>\\t<value>'");
        }
        v.values[line.substr(0, tab)].insert(line.substr(tab + 1));
    }
    return v;
}

std::vector<ValidationIssue> validate_umr(const SemanticGraph& g, const UmrVocabulary& vocab) {
    std::vector<ValidationIssue> issues;
    if (!g.has_var(g.top())) {
        issues.push_back({IssueCode::MissingTop, g.top(), "top is not a defined variable"});
    }
    for (const auto& v : g.variables()) {
        if (g.concept_of(v).empty()) {
            issues.push_back({IssueCode::EmptyConcept, v, "node has an empty concept label"});
        }
    }
    const std::regex role_re("^" + vocab.role_pattern + "$");
    for (const auto& e : g.edges()) {
        if (!g.has_var(e.source) || !g.has_var(e.target)) {
            issues.push_back({IssueCode::UndefinedEndpoint, e.role,
                              e.source + " :" + e.role + " " + e.target});
        }
        if (!std::regex_match(e.role, role_re)) {
            issues.push_back({IssueCode::BadRoleLabel, e.role, "relation role :" + e.role});
        }
    }
    for (const auto& a : g.attributes()) {
        if (!std::regex_match(a.role, role_re)) {
            issues.push_back({IssueCode::BadRoleLabel, a.role, "attribute role :" + a.role});
        }
        if (vocab.constrains(a.role) && !vocab.values.at(a.role).count(a.value)) {
            issues.push_back({IssueCode::UnknownAttributeValue, a.source,
                              ":" + a.role + " " + a.value});
        }
    }
    auto unreachable = g.unreachable_variables();
    if (!unreachable.empty()) {
        std::string detail = "unreachable from top:";
        for (const auto& v : unreachable) detail += " " + v;
        issues.push_back({IssueCode::Disconnected, unreachable.front(), detail});
    }
    return issues;
}

}  // namespace umr
