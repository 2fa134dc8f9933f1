#include "umr/ud2umr.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "umr/penman.hpp"
#include "umr/repair.hpp"

namespace umr {

RuleTable RuleTable::defaults() {
    RuleTable t;
    t.version = "ud2umr-rules/1";
    t.deprel_map = {
        {"nsubj", "ARG0"},    {"obj", "ARG1"},      {"iobj", "ARG2"},
        {"csubj", "ARG0"},    {"ccomp", "ARG1"},    {"xcomp", "ARG1"},
        {"obl", "mod"},       {"nmod", "mod"},      {"amod", "mod"},
        {"advmod", "mod"},    {"appos", "mod"},     {"acl", "mod"},
        {"advcl", "mod"},     {"nummod", "quant"},  {"vocative", "vocative"},
        {"compound", "mod"},  {"flat", "mod"},      {"parataxis", "mod"},
        {"conj", "op"},       // conjuncts collect under a fresh "and" node
        {"case", kDrop},      {"det", kDrop},       {"punct", kDrop},
        {"cc", kDrop},        {"aux", kDrop},       {"cop", kDrop},
        {"mark", kDrop},      {"expl", kDrop},      {"dep", kDrop},
        {"discourse", "mod"}, {"root", kDrop},      {"list", kDrop},
        {"fixed", kDrop},     {"goeswith", kDrop},  {"reparandum", kDrop},
        {"orphan", kDrop},    {"dislocated", kDrop},
    };
    t.pos_map = {
        {"VERB", "predicate"}, {"NOUN", "lemma"},  {"PROPN", "lemma"}, {"ADJ", "lemma"},
        {"ADV", "lemma"},      {"PRON", "pronoun"}, {"NUM", "lemma"},  {"INTJ", "lemma"},
        {"SYM", "lemma"},      {"X", "lemma"},
        {"AUX", "drop"},       {"DET", "drop"},    {"ADP", "drop"},    {"PART", "drop"},
        {"PUNCT", "drop"},     {"CCONJ", "drop"},  {"SCONJ", "drop"},
    };
    t.person_pronoun_lemmas = {"i",  "you",  "he",   "she",     "we",     "they",  "who",
                               "whom", "one", "someone", "anyone", "everyone", "nobody",
                               "myself", "yourself", "himself", "herself", "ourselves",
                               "themselves"};
    return t;
}

RuleTable RuleTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ToolError(ToolCode::IoError, "cannot open rule table: " + path);
    RuleTable t;
    t.version = path;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (line.rfind("# version ", 0) == 0) t.version = line.substr(10);
            continue;
        }
        std::vector<std::string> cols;
        std::stringstream ss(line);
        std::string col;
        while (std::getline(ss, col, '\t')) cols.push_back(col);
        if (cols.size() != 3) {
            throw ToolError(ToolCode::IoError, path + ":" + std::to_string(lineno) +
                                                   ": expected 'kind\\tkey\\tvalue'");
        }
        std::string value = cols[2];
        if (!value.empty() && value[0] == ':') value = value.substr(1);
        if (cols[0] == "deprel") {
            t.deprel_map[cols[1]] = value;
        } else if (cols[0] == "pos") {
            t.pos_map[cols[1]] = value;
        } else if (cols[0] == "person-pronoun") {
            t.person_pronoun_lemmas.insert(cols[1]);
        } else {
            throw ToolError(ToolCode::IoError, path + ":" + std::to_string(lineno) +
                                                   ": unknown rule kind " + cols[0]);
        }
    }
    return t;
}

const std::string* RuleTable::role_for(const std::string& deprel) const {
    auto it = deprel_map.find(deprel);
    if (it != deprel_map.end()) return &it->second;
    auto colon = deprel.find(':');
    if (colon != std::string::npos) {
        it = deprel_map.find(deprel.substr(0, colon));
        if (it != deprel_map.end()) return &it->second;
    }
    return nullptr;
}

const std::string* RuleTable::policy_for(const std::string& upos) const {
    auto it = pos_map.find(upos);
    return it == pos_map.end() ? nullptr : &it->second;
}

namespace {

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

class Bootstrapper {
public:
    Bootstrapper(const ConlluSentence& sentence, const RuleTable& rules, int sent_index)
        : sent_(sentence), rules_(rules), prefix_("s" + std::to_string(sent_index)) {
        children_.resize(sent_.tokens.size() + 1);
        for (const auto& t : sent_.tokens) {
            if (t.head >= 1) children_[t.head].push_back(t.id);
        }
    }

    BootstrapResult run() {
        int root = sent_.root_index();
        if (root < 0) {
            throw ToolError(ToolCode::UnmappableRoot, "sentence has no root token");
        }
        const ConlluToken& root_tok = sent_.tokens[root];
        const std::string* policy = rules_.policy_for(root_tok.upos);
        if (!policy || *policy == "drop") {
            throw ToolError(ToolCode::UnmappableRoot,
                            "no concept policy for root UPOS " + root_tok.upos);
        }
        std::string top = build(root_tok.id);
        result_.graph.set_top(top);
        return std::move(result_);
    }

private:
    std::string fresh_var(const std::string& concept_label, int token_id) {
        char letter = 'x';
        for (char c : concept_label) {
            if (std::isalpha(static_cast<unsigned char>(c))) {
                letter = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
                break;
            }
        }
        std::string base = prefix_ + letter;
        std::string var = base;
        for (int k = 2; taken_.count(var); ++k) var = base + std::to_string(k);
        taken_.insert(var);
        result_.anchors[var] = token_id;
        return var;
    }

    std::string concept_for(const ConlluToken& tok, const std::string& policy) const {
        if (policy == "predicate") return lower(tok.lemma) + "-00";
        if (policy == "pronoun") {
            return rules_.person_pronoun_lemmas.count(lower(tok.lemma)) ? "person" : "thing";
        }
        return lower(tok.lemma);
    }

    void add_refer_attributes(const std::string& var, const ConlluToken& tok) {
        if (tok.upos == "PRON") {
            auto person = tok.feats.find("Person");
            if (person != tok.feats.end()) {
                static const std::map<std::string, std::string> persons = {
                    {"1", "1st"}, {"2", "2nd"}, {"3", "3rd"}, {"4", "4th"}};
                auto it = persons.find(person->second);
                if (it != persons.end()) {
                    result_.graph.add_attribute(var, "refer-person", it->second);
                }
            }
        }
        if (tok.upos == "PRON" || tok.upos == "NOUN" || tok.upos == "PROPN") {
            auto number = tok.feats.find("Number");
            if (number != tok.feats.end()) {
                if (number->second == "Plur") {
                    result_.graph.add_attribute(var, "refer-number", "Plural");
                } else if (number->second == "Sing") {
                    result_.graph.add_attribute(var, "refer-number", "Singular");
                }
            }
        }
    }

    // Builds the node for a token, wrapping it in a fresh "and" node when it
    // has conj children. Returns the variable the parent should attach.
    std::string build(int token_id) {
        const ConlluToken& tok = *sent_.token_by_id(token_id);
        const std::string* policy = rules_.policy_for(tok.upos);
        std::string concept_label = concept_for(tok, *policy);
        std::string var = fresh_var(concept_label, token_id);
        result_.graph.add_node(var, concept_label);
        add_refer_attributes(var, tok);

        std::vector<int> conjuncts;
        for (int child_id : children_[token_id]) {
            const ConlluToken& child = *sent_.token_by_id(child_id);
            if (child.deprel == "conj" || child.deprel.rfind("conj:", 0) == 0) {
                conjuncts.push_back(child_id);
                continue;
            }
            const std::string* role = rules_.role_for(child.deprel);
            if (!role || *role == RuleTable::kDrop) continue;
            const std::string* child_policy = rules_.policy_for(child.upos);
            if (!child_policy || *child_policy == "drop") continue;
            std::string child_var = build(child_id);
            result_.graph.add_edge(var, *role, child_var);
        }
        if (conjuncts.empty()) return var;

        // coordination: fresh "and" node takes this node's place
        std::string and_var = fresh_var("and", coordinator_token(token_id, conjuncts));
        result_.graph.add_node(and_var, "and");
        result_.graph.add_edge(and_var, "op1", var);
        int op = 2;
        for (int conj_id : conjuncts) {
            const ConlluToken& conj_tok = *sent_.token_by_id(conj_id);
            const std::string* conj_policy = rules_.policy_for(conj_tok.upos);
            if (!conj_policy || *conj_policy == "drop") continue;
            std::string conj_var = build(conj_id);
            result_.graph.add_edge(and_var, "op" + std::to_string(op++), conj_var);
        }
        return and_var;
    }

    // the cc token of a coordination, used as the "and" node's anchor
    int coordinator_token(int head_id, const std::vector<int>& conjuncts) const {
        for (int conj_id : conjuncts) {
            for (int cand : children_[conj_id]) {
                const ConlluToken& t = *sent_.token_by_id(cand);
                if (t.deprel == "cc" || t.deprel.rfind("cc:", 0) == 0) return cand;
            }
        }
        return head_id;
    }

    const ConlluSentence& sent_;
    const RuleTable& rules_;
    std::string prefix_;
    std::vector<std::vector<int>> children_;
    std::set<std::string> taken_;
    BootstrapResult result_;
};

}  // namespace

BootstrapResult bootstrap_partial(const ConlluSentence& sentence, const RuleTable& rules,
                                  int sent_index) {
    return Bootstrapper(sentence, rules, sent_index).run();
}

std::vector<CompletionRecord> make_completion_records(
    const std::vector<ConlluSentence>& sentences, const std::vector<SemanticGraph>& partials,
    const std::vector<SemanticGraph>* golds) {
    if (sentences.size() != partials.size() || (golds && golds->size() != sentences.size())) {
        throw ToolError(ToolCode::LengthMismatch,
                        "sentences, partials and golds must have equal lengths");
    }
    SerializeOptions one_line{false, 0};
    std::vector<CompletionRecord> records;
    records.reserve(sentences.size());
    for (std::size_t i = 0; i < sentences.size(); ++i) {
        CompletionRecord rec;
        rec.sent_id = sentences[i].sent_id.empty() ? "s" + std::to_string(i + 1)
                                                   : sentences[i].sent_id;
        rec.sentence = sentences[i].text;
        rec.partial = serialize_penman(partials[i], one_line);
        if (golds) rec.gold = serialize_penman((*golds)[i], one_line);
        records.push_back(std::move(rec));
    }
    return records;
}

void write_completion_records(std::ostream& out, const std::vector<CompletionRecord>& records) {
    for (const auto& rec : records) {
        nlohmann::json doc = {{"sent_id", rec.sent_id},
                              {"sentence", rec.sentence},
                              {"partial", rec.partial},
                              {"gold", rec.gold}};
        out << doc.dump() << "\n";
    }
}

std::vector<CompletionRecord> read_completion_records(std::istream& in) {
    std::vector<CompletionRecord> records;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw ToolError(ToolCode::IoError,
                            "completion record line " + std::to_string(lineno) + ": " + e.what());
        }
        CompletionRecord rec;
        rec.sent_id = doc.value("sent_id", "");
        rec.sentence = doc.value("sentence", "");
        rec.partial = doc.value("partial", "");
        rec.gold = doc.value("gold", "");
        records.push_back(std::move(rec));
    }
    return records;
}

IngestResult ingest_completions(const std::vector<CompletionRecord>& records,
                                const std::vector<std::string>& completions) {
    if (records.size() != completions.size()) {
        throw ToolError(ToolCode::IdMismatch,
                        "got " + std::to_string(completions.size()) + " completions for " +
                            std::to_string(records.size()) + " records");
    }
    IngestResult result;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const std::string& id = records[i].sent_id;
        RepairOutcome repaired = repair_parens(completions[i]);
        if (repaired.status == RepairStatus::Unrecoverable) {
            result.failures.push_back({id, completions[i], repaired.diagnostics});
            continue;
        }
        try {
            result.graphs.emplace_back(id, parse_penman(repaired.text));
        } catch (const ParseError& e) {
            result.failures.push_back({id, completions[i], e.what()});
        }
    }
    return result;
}

}  // namespace umr
