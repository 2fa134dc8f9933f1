#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "umr/errors.hpp"

namespace umr {

struct ConlluToken {
    int id = 0;            // 1-based
    std::string form;
    std::string lemma;
    std::string upos;
    std::string xpos;
    std::map<std::string, std::string> feats;  // e.g. Person -> 3, Number -> Plur
    int head = 0;          // 0 = root
    std::string deprel;
    std::string deps;
    std::string misc;
};

struct ConlluSentence {
    std::string sent_id;
    std::string text;
    std::vector<ConlluToken> tokens;

    // 0-based index of the head=0 token; -1 if absent.
    int root_index() const;
    const ConlluToken* token_by_id(int id) const;
};

enum class ConlluCode {
    WrongColumnCount,
    NonContiguousIds,
    MultipleRoots,
    CyclicHeads,
    HeadOutOfRange,
    BadId,
};

struct ConlluIssue {
    ConlluCode code;
    int line = 0;          // 1-based line in the input
    std::string sent_id;
    std::string message;
};

struct ConlluParseResult {
    std::vector<ConlluSentence> sentences;  // the valid ones
    std::vector<ConlluIssue> issues;        // malformed sentences, with line numbers
};

// Tab-separated 10-column CoNLL-U. Comment lines start with '#'; a blank line
// separates sentences. Multiword-token ranges ("3-4") and empty nodes ("3.1")
// are skipped. Malformed sentences are reported and excluded, valid ones kept.
ConlluParseResult parse_conllu(std::string_view text);

std::string serialize_conllu(const ConlluSentence& sentence);

// Bracket token pairs merged by normalize_tags.
const std::vector<std::pair<std::string, std::string>>& default_bracket_pairs();

// Merges consecutive token triples ("<", X, ">") into a single token "<X>"
// carrying X's tag and tree position, re-indexing ids and heads. Idempotent.
ConlluSentence normalize_tags(
    const ConlluSentence& sentence,
    const std::vector<std::pair<std::string, std::string>>& brackets = default_bracket_pairs());

}  // namespace umr
