#include "umr/conllu.hpp"

#include <algorithm>
#include <sstream>

namespace umr {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> cols;
    std::size_t start = 0;
    for (;;) {
        std::size_t tab = line.find('\t', start);
        if (tab == std::string::npos) {
            cols.push_back(line.substr(start));
            break;
        }
        cols.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
    return cols;
}

std::map<std::string, std::string> parse_feats(const std::string& field) {
    std::map<std::string, std::string> feats;
    if (field == "_" || field.empty()) return feats;
    std::stringstream ss(field);
    std::string item;
    while (std::getline(ss, item, '|')) {
        auto eq = item.find('=');
        if (eq != std::string::npos) feats[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return feats;
}

const char* to_message(ConlluCode code) {
    switch (code) {
        case ConlluCode::WrongColumnCount: return "expected 10 tab-separated columns";
        case ConlluCode::NonContiguousIds: return "token ids are not contiguous from 1";
        case ConlluCode::MultipleRoots: return "more than one token has head 0";
        case ConlluCode::CyclicHeads: return "head links contain a cycle";
        case ConlluCode::HeadOutOfRange: return "head outside [0, sentence length]";
        case ConlluCode::BadId: return "unparseable token id";
    }
    return "?";
}

struct SentenceAccumulator {
    ConlluSentence sentence;
    int first_line = 0;
    bool failed = false;

    void reset() {
        sentence = ConlluSentence{};
        first_line = 0;
        failed = false;
    }
    bool empty() const { return sentence.tokens.empty() && sentence.sent_id.empty() && !failed; }
};

}  // namespace

int ConlluSentence::root_index() const {
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (tokens[i].head == 0) return static_cast<int>(i);
    }
    return -1;
}

const ConlluToken* ConlluSentence::token_by_id(int id) const {
    if (id < 1 || id > static_cast<int>(tokens.size())) return nullptr;
    return &tokens[id - 1];
}

ConlluParseResult parse_conllu(std::string_view text) {
    ConlluParseResult result;
    SentenceAccumulator acc;

    auto report = [&](ConlluCode code, int line) {
        result.issues.push_back(
            {code, line, acc.sentence.sent_id, to_message(code)});
        acc.failed = true;
    };

    auto finish = [&](int at_line) {
        if (acc.empty()) {
            acc.reset();
            return;
        }
        if (!acc.failed && !acc.sentence.tokens.empty()) {
            const auto& toks = acc.sentence.tokens;
            int n = static_cast<int>(toks.size());
            for (int i = 0; i < n && !acc.failed; ++i) {
                if (toks[i].id != i + 1) report(ConlluCode::NonContiguousIds, acc.first_line);
            }
            int roots = 0;
            for (const auto& t : toks) {
                if (!acc.failed && (t.head < 0 || t.head > n)) {
                    report(ConlluCode::HeadOutOfRange, acc.first_line);
                }
                if (t.head == 0) ++roots;
            }
            if (!acc.failed && roots > 1) report(ConlluCode::MultipleRoots, acc.first_line);
            if (!acc.failed) {
                // walk each token to the root; a repeat within one walk is a cycle
                for (int i = 0; i < n && !acc.failed; ++i) {
                    int cur = toks[i].id;
                    int steps = 0;
                    while (cur != 0) {
                        cur = toks[cur - 1].head;
                        if (++steps > n) {
                            report(ConlluCode::CyclicHeads, acc.first_line);
                            break;
                        }
                    }
                }
            }
        }
        if (!acc.failed && !acc.sentence.tokens.empty()) {
            result.sentences.push_back(std::move(acc.sentence));
        }
        (void)at_line;
        acc.reset();
    };

    std::string line;
    int lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            line = std::string(text.substr(pos));
            pos = text.size() + 1;
        } else {
            line = std::string(text.substr(pos, nl - pos));
            pos = nl + 1;
        }
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) {
            finish(lineno);
            continue;
        }
        if (line[0] == '#') {
            if (line.rfind("# sent_id = ", 0) == 0) acc.sentence.sent_id = line.substr(12);
            if (line.rfind("# text = ", 0) == 0) acc.sentence.text = line.substr(9);
            continue;
        }
        if (acc.failed) continue;
        if (acc.first_line == 0) acc.first_line = lineno;
        auto cols = split_tabs(line);
        if (cols.size() != 10) {
            report(ConlluCode::WrongColumnCount, lineno);
            continue;
        }
        const std::string& id_field = cols[0];
        if (id_field.find('-') != std::string::npos ||
            id_field.find('.') != std::string::npos) {
            continue;  // multiword-token range or empty node
        }
        ConlluToken tok;
        try {
            tok.id = std::stoi(id_field);
            tok.head = cols[6] == "_" ? 0 : std::stoi(cols[6]);
        } catch (const std::exception&) {
            report(ConlluCode::BadId, lineno);
            continue;
        }
        tok.form = cols[1];
        tok.lemma = cols[2];
        tok.upos = cols[3];
        tok.xpos = cols[4];
        tok.feats = parse_feats(cols[5]);
        tok.deprel = cols[7];
        tok.deps = cols[8];
        tok.misc = cols[9];
        acc.sentence.tokens.push_back(std::move(tok));
    }
    finish(lineno);
    return result;
}

std::string serialize_conllu(const ConlluSentence& sentence) {
    std::ostringstream out;
    if (!sentence.sent_id.empty()) out << "# sent_id = " << sentence.sent_id << "\n";
    if (!sentence.text.empty()) out << "# text = " << sentence.text << "\n";
    for (const auto& t : sentence.tokens) {
        std::string feats;
        for (const auto& [k, v] : t.feats) {
            if (!feats.empty()) feats += "|";
            feats += k + "=" + v;
        }
        if (feats.empty()) feats = "_";
        auto field = [](const std::string& s) { return s.empty() ? std::string("_") : s; };
        out << t.id << "\t" << field(t.form) << "\t" << field(t.lemma) << "\t" << field(t.upos)
            << "\t" << field(t.xpos) << "\t" << feats << "\t" << t.head << "\t"
            << field(t.deprel) << "\t" << field(t.deps) << "\t" << field(t.misc) << "\n";
    }
    out << "\n";
    return out.str();
}

const std::vector<std::pair<std::string, std::string>>& default_bracket_pairs() {
    static const std::vector<std::pair<std::string, std::string>> pairs = {{"<", ">"},
                                                                           {"[", "]"}};
    return pairs;
}

ConlluSentence normalize_tags(const ConlluSentence& sentence,
                              const std::vector<std::pair<std::string, std::string>>& brackets) {
    const auto& toks = sentence.tokens;
    int n = static_cast<int>(toks.size());
    // old id -> new id, with merged triples collapsing onto the middle token
    std::vector<int> keep;          // indices of surviving tokens
    std::vector<int> new_id(n + 1, 0);
    std::vector<bool> merged(n, false);
    std::vector<bool> is_center(n, false);
    for (int i = 0; i + 2 < n; ++i) {
        if (merged[i]) continue;
        for (const auto& [open, close] : brackets) {
            if (toks[i].form == open && toks[i + 2].form == close && !toks[i + 1].form.empty() &&
                toks[i + 1].form != open && toks[i + 1].form != close) {
                merged[i] = merged[i + 1] = merged[i + 2] = true;
                is_center[i + 1] = true;
                break;
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        if (!merged[i] || is_center[i]) keep.push_back(i);
    }
    for (std::size_t k = 0; k < keep.size(); ++k) {
        int old_idx = keep[k];
        new_id[toks[old_idx].id] = static_cast<int>(k) + 1;
        if (is_center[old_idx]) {
            // the flanking bracket tokens map onto the merged token
            new_id[toks[old_idx - 1].id] = static_cast<int>(k) + 1;
            new_id[toks[old_idx + 1].id] = static_cast<int>(k) + 1;
        }
    }
    ConlluSentence out;
    out.sent_id = sentence.sent_id;
    out.text = sentence.text;
    for (std::size_t k = 0; k < keep.size(); ++k) {
        int i = keep[k];
        ConlluToken t = toks[i];
        t.id = static_cast<int>(k) + 1;
        if (is_center[i]) {
            t.form = toks[i - 1].form + t.form + toks[i + 1].form;
            t.lemma = toks[i - 1].form + t.lemma + toks[i + 1].form;
        }
        int h = t.head;
        t.head = h == 0 ? 0 : new_id[h];
        if (t.head == t.id) {
            // head collapsed onto the merged token itself; climb out via the
            // original head chain
            int cur = toks[i].head;
            while (cur != 0 && new_id[cur] == t.id) cur = toks[cur - 1].head;
            t.head = cur == 0 ? 0 : new_id[cur];
        }
        out.tokens.push_back(std::move(t));
    }
    return out;
}

}  // namespace umr
