#pragma once

#include <compare>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "umr/errors.hpp"

namespace umr {

struct Edge {
    std::string source;  // variable id
    std::string role;    // role label without the leading ':'
    std::string target;  // variable id
    int ord = 0;         // position among the source node's children

    friend bool operator==(const Edge&, const Edge&) = default;
};

struct Attribute {
    std::string source;  // variable id
    std::string role;    // role label without the leading ':'
    std::string value;   // surface form without surrounding quotes
    bool quoted = false;
    int ord = 0;

    friend bool operator==(const Attribute&, const Attribute&) = default;
};

// Rooted, labeled, possibly re-entrant semantic graph. Nodes are variables
// bound to concept labels; edges carry role labels; attributes carry constant
// values. Insertion order is preserved so that a parsed graph serializes back
// in source-text order.
class SemanticGraph {
public:
    const std::string& top() const { return top_; }
    void set_top(const std::string& var) { top_ = var; }

    bool has_var(const std::string& var) const { return concepts_.count(var) != 0; }
    std::size_t node_count() const { return var_order_.size(); }

    // Returns the concept label bound to `var`, or "" if undefined.
    const std::string& concept_of(const std::string& var) const;

    // Variables in definition order.
    const std::vector<std::string>& variables() const { return var_order_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Attribute>& attributes() const { return attributes_; }

    void add_node(const std::string& var, const std::string& concept_label);
    void add_edge(const std::string& source, const std::string& role, const std::string& target);
    void add_attribute(const std::string& source, const std::string& role,
                       const std::string& value, bool quoted = false);

    // Variables not reachable from top when edges are treated as undirected.
    std::vector<std::string> unreachable_variables() const;

private:
    std::string top_;
    std::vector<std::string> var_order_;
    std::map<std::string, std::string> concepts_;
    std::vector<Edge> edges_;
    std::vector<Attribute> attributes_;
    int next_ord_ = 0;
};

enum class TripleKind { Top, Instance, Relation, Attribute };

// Atomic unit of graph comparison. A graph with N nodes, E edges and A
// attributes yields exactly N + E + A + 1 triples.
struct Triple {
    TripleKind kind;
    std::string arg1;  // variable id, or "TOP" for the top triple
    std::string role;  // role label, or "instance" / "top"
    std::string arg2;  // concept, variable id, or constant
    bool quoted = false;

    auto operator<=>(const Triple&) const = default;
};

std::string to_string(const Triple& t);

// Deterministic order: top, instances, relations, attributes.
std::vector<Triple> triples(const SemanticGraph& g);
std::set<Triple> triple_set(const SemanticGraph& g);

// Attribute-value inventory used by validate_umr. Shipped as an editable
// data file; defaults() seeds the values observed in released UMR data.
struct UmrVocabulary {
    std::map<std::string, std::set<std::string>> values;  // attribute role -> allowed values
    std::string role_pattern = "[A-Za-z][A-Za-z0-9-]*";

    static UmrVocabulary defaults();
    static UmrVocabulary load(const std::string& path);

    bool constrains(const std::string& role) const { return values.count(role) != 0; }
};

enum class IssueCode {
    UnknownAttributeValue,
    BadRoleLabel,
    Disconnected,
    MissingTop,
    UndefinedEndpoint,
    EmptyConcept,
};

struct ValidationIssue {
    IssueCode code;
    std::string where;   // variable or role the issue anchors to
    std::string detail;

    friend bool operator==(const ValidationIssue&, const ValidationIssue&) = default;
};

// Pure check; never mutates the graph. Empty result means clean.
std::vector<ValidationIssue> validate_umr(const SemanticGraph& g, const UmrVocabulary& vocab);

}  // namespace umr
