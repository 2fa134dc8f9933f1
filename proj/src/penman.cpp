#include "umr/penman.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace umr {

namespace {

struct Token {
    enum Type { LParen, RParen, Slash, Role, Atom, Str, End };
    Type type = End;
    std::string text;   // role label without ':', string content without quotes
    std::size_t pos = 0;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> all() {
        std::vector<Token> out;
        for (;;) {
            Token t = next();
            out.push_back(t);
            if (t.type == Token::End) break;
        }
        return out;
    }

private:
    Token next() {
        while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_]))) ++i_;
        if (i_ >= text_.size()) return {Token::End, "", text_.size()};
        std::size_t start = i_;
        char c = text_[i_];
        switch (c) {
            case '(': ++i_; return {Token::LParen, "(", start};
            case ')': ++i_; return {Token::RParen, ")", start};
            case '/': ++i_; return {Token::Slash, "/", start};
            case '"': {
                ++i_;
                std::string content;
                while (i_ < text_.size() && text_[i_] != '"') {
                    if (text_[i_] == '\\' && i_ + 1 < text_.size()) ++i_;
                    content += text_[i_++];
                }
                if (i_ >= text_.size()) {
                    throw ParseError(ParseCode::UnterminatedString, start,
                                     "unterminated string at offset " + std::to_string(start));
                }
                ++i_;  // closing quote
                return {Token::Str, content, start};
            }
            case ':': {
                ++i_;
                std::string label = read_atom_chars();
                if (label.empty()) {
                    throw ParseError(ParseCode::UnexpectedToken, start,
                                     "empty role label at offset " + std::to_string(start));
                }
                return {Token::Role, label, start};
            }
            default: {
                std::string atom = read_atom_chars();
                return {Token::Atom, atom, start};
            }
        }
    }

    std::string read_atom_chars() {
        std::string out;
        while (i_ < text_.size()) {
            char c = text_[i_];
            if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' ||
                c == '/' || c == '"' || c == ':')
                break;
            out += c;
            ++i_;
        }
        return out;
    }

    std::string_view text_;
    std::size_t i_ = 0;
};

class Parser {
public:
    explicit Parser(std::string_view text) : tokens_(Lexer(text).all()), end_pos_(text.size()) {
        // Pre-scan variable definitions: "( var /". A role target is an
        // attribute iff it is not a parenthesized node and not a defined
        // variable anywhere in the text.
        for (std::size_t i = 0; i + 2 < tokens_.size(); ++i) {
            if (tokens_[i].type == Token::LParen && tokens_[i + 1].type == Token::Atom &&
                tokens_[i + 2].type == Token::Slash) {
                if (!defined_.insert(tokens_[i + 1].text).second) {
                    throw ParseError(ParseCode::DuplicateVariable, tokens_[i + 1].pos,
                                     "variable defined twice: " + tokens_[i + 1].text);
                }
            }
        }
    }

    SemanticGraph run() {
        if (peek().type == Token::End) {
            throw ParseError(ParseCode::EmptyInput, 0, "empty input");
        }
        std::string root = parse_node();
        const Token& t = peek();
        if (t.type == Token::RParen) {
            throw ParseError(ParseCode::UnbalancedParens, t.pos,
                             "unmatched ')' at offset " + std::to_string(t.pos));
        }
        if (t.type != Token::End) {
            throw ParseError(ParseCode::UnexpectedToken, t.pos,
                             "trailing content at offset " + std::to_string(t.pos));
        }
        graph_.set_top(root);
        return std::move(graph_);
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
        return tokens_[i];
    }
    const Token& take() { return tokens_[std::min(pos_++, tokens_.size() - 1)]; }

    // node := '(' var '/' concept child* ')' | '(' var ')'
    std::string parse_node() {
        const Token& lp = take();
        if (lp.type != Token::LParen) {
            if (lp.type == Token::End) {
                throw ParseError(ParseCode::UnbalancedParens, end_pos_, "unexpected end of input");
            }
            throw ParseError(ParseCode::UnexpectedToken, lp.pos,
                             "expected '(' at offset " + std::to_string(lp.pos));
        }
        const Token& var = take();
        if (var.type != Token::Atom) {
            throw ParseError(ParseCode::UnexpectedToken, var.pos,
                             "expected a variable after '(' at offset " + std::to_string(var.pos));
        }
        if (peek().type == Token::RParen) {
            // parenthesized re-entrant reference
            take();
            if (!defined_.count(var.text)) {
                throw ParseError(ParseCode::UndefinedVariable, var.pos,
                                 "reference to undefined variable: " + var.text);
            }
            return var.text;
        }
        if (peek().type != Token::Slash) {
            throw ParseError(ParseCode::MissingConcept, peek().pos,
                             "expected '/' after variable " + var.text);
        }
        take();  // '/'
        const Token& concept_tok = take();
        if (concept_tok.type != Token::Atom || concept_tok.text.empty()) {
            throw ParseError(ParseCode::MissingConcept, concept_tok.pos,
                             "expected a concept after '/' at offset " +
                                 std::to_string(concept_tok.pos));
        }
        graph_.add_node(var.text, concept_tok.text);

        while (peek().type == Token::Role) {
            const Token& role = take();
            const Token& t = peek();
            switch (t.type) {
                case Token::LParen: {
                    std::string child = parse_node();
                    graph_.add_edge(var.text, role.text, child);
                    break;
                }
                case Token::Atom: {
                    take();
                    if (defined_.count(t.text)) {
                        graph_.add_edge(var.text, role.text, t.text);
                    } else {
                        graph_.add_attribute(var.text, role.text, t.text, false);
                    }
                    break;
                }
                case Token::Str: {
                    take();
                    graph_.add_attribute(var.text, role.text, t.text, true);
                    break;
                }
                default:
                    throw ParseError(ParseCode::UnexpectedToken, t.pos,
                                     "expected a value after :" + role.text);
            }
        }
        const Token& rp = take();
        if (rp.type != Token::RParen) {
            std::size_t p = rp.type == Token::End ? end_pos_ : rp.pos;
            throw ParseError(ParseCode::UnbalancedParens, p,
                             "missing ')' for node " + var.text);
        }
        return var.text;
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::size_t end_pos_;
    std::set<std::string> defined_;
    SemanticGraph graph_;
};

// Quoting is required when the value contains PENMAN syntax characters.
bool needs_quotes(const std::string& value) {
    if (value.empty()) return true;
    for (char c : value) {
        if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == '/' ||
            c == '"' || c == ':')
            return true;
    }
    return false;
}

std::string quote(const std::string& value) {
    std::string out = "\"";
    for (char c : value) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

class Serializer {
public:
    Serializer(const SemanticGraph& g, const SerializeOptions& opts) : g_(g), opts_(opts) {
        for (std::size_t i = 0; i < g.edges().size(); ++i) {
            const Edge& e = g.edges()[i];
            out_items_[e.source].push_back({e.ord, static_cast<int>(i), ItemKind::EdgeOut});
            in_items_[e.target].push_back({e.ord, static_cast<int>(i), ItemKind::EdgeIn});
        }
        for (std::size_t i = 0; i < g.attributes().size(); ++i) {
            const Attribute& a = g.attributes()[i];
            out_items_[a.source].push_back({a.ord, static_cast<int>(i), ItemKind::Attr});
        }
    }

    std::string run() {
        auto unreachable = g_.unreachable_variables();
        if (!unreachable.empty()) {
            std::string msg = "cannot serialize disconnected graph; unreachable:";
            for (const auto& v : unreachable) msg += " " + v;
            throw SerializeError(unreachable, msg);
        }
        visit(g_.top(), 0);
        return out_.str();
    }

private:
    enum class ItemKind { EdgeOut, Attr, EdgeIn };
    struct Item {
        int ord;
        int index;
        ItemKind kind;
    };

    void emit_sep(int depth) {
        if (opts_.multiline) {
            out_ << "\n" << std::string(static_cast<std::size_t>(opts_.indent) * depth, ' ');
        } else {
            out_ << " ";
        }
    }

    void visit(const std::string& var, int depth) {
        visited_.insert(var);
        out_ << "(" << var << " / " << g_.concept_of(var);
        // stored child order first, then inverse edges needed to reach
        // otherwise-unreachable sources
        auto items = out_items_[var];
        for (const auto& in : in_items_[var]) items.push_back(in);
        std::stable_sort(items.begin(), items.end(),
                         [](const Item& a, const Item& b) { return a.ord < b.ord; });
        for (const auto& item : items) {
            switch (item.kind) {
                case ItemKind::Attr: {
                    const Attribute& a = g_.attributes()[item.index];
                    emit_sep(depth + 1);
                    out_ << ":" << a.role << " ";
                    if (a.quoted || needs_quotes(a.value)) {
                        out_ << quote(a.value);
                    } else {
                        out_ << a.value;
                    }
                    break;
                }
                case ItemKind::EdgeOut: {
                    if (edge_done_.count(item.index)) break;
                    edge_done_.insert(item.index);
                    const Edge& e = g_.edges()[item.index];
                    emit_sep(depth + 1);
                    out_ << ":" << e.role << " ";
                    if (visited_.count(e.target)) {
                        out_ << e.target;
                    } else {
                        visit(e.target, depth + 1);
                    }
                    break;
                }
                case ItemKind::EdgeIn: {
                    if (edge_done_.count(item.index)) break;
                    const Edge& e = g_.edges()[item.index];
                    // a forward traversal will emit it from e.source
                    if (visited_.count(e.source)) break;
                    edge_done_.insert(item.index);
                    emit_sep(depth + 1);
                    out_ << ":" << inverse_role(e.role) << " ";
                    visit(e.source, depth + 1);
                    break;
                }
            }
        }
        out_ << ")";
    }

    static std::string inverse_role(const std::string& role) {
        if (role.size() > 3 && role.ends_with("-of")) return role.substr(0, role.size() - 3);
        return role + "-of";
    }

    const SemanticGraph& g_;
    SerializeOptions opts_;
    std::map<std::string, std::vector<Item>> out_items_;
    std::map<std::string, std::vector<Item>> in_items_;
    std::set<std::string> visited_;
    std::set<int> edge_done_;
    std::ostringstream out_;
};

}  // namespace

SemanticGraph parse_penman(std::string_view text) { return Parser(text).run(); }

std::string serialize_penman(const SemanticGraph& g, const SerializeOptions& opts) {
    return Serializer(g, opts).run();
}

std::vector<PenmanBlock> read_penman_blocks(std::istream& in) {
    std::vector<PenmanBlock> blocks;
    PenmanBlock cur;
    bool in_block = false;
    std::string line;
    int lineno = 0;
    auto flush = [&]() {
        if (in_block && !cur.text.empty()) blocks.push_back(cur);
        cur = PenmanBlock{};
        in_block = false;
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::string trimmed = line;
        while (!trimmed.empty() && (trimmed.back() == '\r' || trimmed.back() == ' '))
            trimmed.pop_back();
        if (trimmed.empty()) {
            flush();
            continue;
        }
        if (trimmed[0] == '#') {
            if (trimmed.rfind("# ::id ", 0) == 0) {
                if (!cur.text.empty()) flush();  // new header starts a new block
                cur.id = trimmed.substr(7);
                in_block = true;
            } else if (trimmed.rfind("# ::snt ", 0) == 0) {
                cur.snt = trimmed.substr(8);
                in_block = true;
            }
            continue;
        }
        if (cur.text.empty()) cur.line = lineno;
        if (!cur.text.empty()) cur.text += "\n";
        cur.text += trimmed;
        in_block = true;
    }
    flush();
    return blocks;
}

std::vector<PenmanBlock> read_penman_blocks_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ToolError(ToolCode::IoError, "cannot open file: " + path);
    return read_penman_blocks(in);
}

void write_penman_block(std::ostream& out, const PenmanBlock& block) {
    if (!block.id.empty()) out << "# ::id " << block.id << "\n";
    if (!block.snt.empty()) out << "# ::snt " << block.snt << "\n";
    out << block.text << "\n\n";
}

}  // namespace umr
