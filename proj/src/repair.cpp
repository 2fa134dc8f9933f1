#include "umr/repair.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <set>

#include "umr/penman.hpp"

namespace umr {

namespace {

bool parses(const std::string& text) {
    try {
        parse_penman(text);
        return true;
    } catch (const ParseError&) {
        return false;
    }
}

// Positions of structural parens, skipping quoted strings.
void scan_parens(const std::string& text, std::vector<std::size_t>& opens,
                 std::vector<std::size_t>& closes) {
    bool in_string = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (in_string) {
            if (c == '\\') {
                ++i;
            } else if (c == '"') {
                in_string = false;
            }
            continue;
        }
        if (c == '"') {
            in_string = true;
        } else if (c == '(') {
            opens.push_back(i);
        } else if (c == ')') {
            closes.push_back(i);
        }
    }
}

int balance(const std::string& text) {
    std::vector<std::size_t> opens, closes;
    scan_parens(text, opens, closes);
    return static_cast<int>(opens.size()) - static_cast<int>(closes.size());
}

}  // namespace

const char* to_string(RepairStatus status) {
    switch (status) {
        case RepairStatus::Clean: return "clean";
        case RepairStatus::Repaired: return "repaired";
        case RepairStatus::Unrecoverable: return "unrecoverable";
    }
    return "?";
}

RepairOutcome repair_parens(std::string_view input, int max_interior_edits) {
    RepairOutcome out;
    out.text = std::string(input);
    if (parses(out.text)) {
        out.status = RepairStatus::Clean;
        return out;
    }

    std::string work = out.text;
    std::vector<RepairEdit> edits;
    std::string last_error;

    auto try_parse = [&](const std::string& s) {
        try {
            parse_penman(s);
            return true;
        } catch (const ParseError& e) {
            last_error = e.what();
            return false;
        }
    };

    // trailing surplus: trim closers from the end while over-closed
    while (balance(work) < 0) {
        std::size_t i = work.size();
        while (i > 0 && std::isspace(static_cast<unsigned char>(work[i - 1]))) --i;
        if (i == 0 || work[i - 1] != ')') break;
        work.erase(i - 1, 1);
        edits.push_back({i - 1, false, ')'});
    }
    // deficit: append the missing closers
    int deficit = balance(work);
    for (int k = 0; k < deficit; ++k) {
        edits.push_back({work.size(), true, ')'});
        work += ')';
    }
    if (try_parse(work)) {
        out.status = RepairStatus::Repaired;
        out.text = work;
        out.edits = std::move(edits);
        return out;
    }

    // interior mismatches: bounded breadth-first search over single
    // parenthesis edits (delete one structural paren, or insert ')' before a
    // structural open paren)
    struct State {
        std::string text;
        std::vector<RepairEdit> edits;
    };
    std::deque<State> queue{{work, edits}};
    std::set<std::string> seen{work};
    int base_edits = static_cast<int>(edits.size());
    std::size_t attempts = 0;
    while (!queue.empty() && attempts < 20000) {
        State cur = std::move(queue.front());
        queue.pop_front();
        if (static_cast<int>(cur.edits.size()) - base_edits >= max_interior_edits) continue;
        std::vector<std::size_t> opens, closes;
        scan_parens(cur.text, opens, closes);
        std::vector<State> next;
        for (std::size_t pos : closes) {
            State s{cur.text, cur.edits};
            s.text.erase(pos, 1);
            s.edits.push_back({pos, false, ')'});
            next.push_back(std::move(s));
        }
        for (std::size_t pos : opens) {
            State s{cur.text, cur.edits};
            s.text.erase(pos, 1);
            s.edits.push_back({pos, false, '('});
            next.push_back(std::move(s));
            State ins{cur.text, cur.edits};
            ins.text.insert(pos, 1, ')');
            ins.edits.push_back({pos, true, ')'});
            next.push_back(std::move(ins));
        }
        for (auto& s : next) {
            ++attempts;
            if (!seen.insert(s.text).second) continue;
            // keep the text balanced-fixable: re-apply the cheap end fixes
            int b = balance(s.text);
            std::string fixed = s.text;
            std::vector<RepairEdit> fixed_edits = s.edits;
            for (int k = 0; k < b; ++k) {
                fixed_edits.push_back({fixed.size(), true, ')'});
                fixed += ')';
            }
            if (try_parse(fixed)) {
                out.status = RepairStatus::Repaired;
                out.text = fixed;
                out.edits = std::move(fixed_edits);
                return out;
            }
            queue.push_back(std::move(s));
        }
    }

    out.status = RepairStatus::Unrecoverable;
    out.diagnostics = last_error.empty() ? "no parse found within the edit budget" : last_error;
    return out;
}

RepairSummary repair_report(const std::vector<RepairOutcome>& outcomes,
                            const std::vector<std::string>& ids) {
    RepairSummary summary;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        switch (outcomes[i].status) {
            case RepairStatus::Clean: ++summary.clean; break;
            case RepairStatus::Repaired: ++summary.repaired; break;
            case RepairStatus::Unrecoverable:
                ++summary.unrecoverable;
                summary.unrecoverable_ids.push_back(i < ids.size() ? ids[i]
                                                                   : std::to_string(i));
                break;
        }
    }
    return summary;
}

}  // namespace umr
