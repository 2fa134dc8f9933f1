#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace umr {

enum class RepairStatus { Clean, Repaired, Unrecoverable };

struct RepairEdit {
    std::size_t pos;     // offset in the text the edit was applied to
    bool insert;         // true = inserted, false = deleted
    char ch;

    friend bool operator==(const RepairEdit&, const RepairEdit&) = default;
};

struct RepairOutcome {
    RepairStatus status = RepairStatus::Clean;
    std::string text;            // input verbatim when clean; repaired text otherwise
    std::vector<RepairEdit> edits;
    std::string diagnostics;     // set when unrecoverable
};

// Detects and corrects parenthesis mismatches in model-generated PENMAN
// text. Missing closers are appended, surplus trailing closers trimmed,
// interior mismatches attempted by a bounded edit search. All edits are
// parenthesis-only; a repaired result always parses. Parentheses inside
// quoted strings (e.g. ":)") are not structural and are left alone.
RepairOutcome repair_parens(std::string_view text, int max_interior_edits = 3);

struct RepairSummary {
    long clean = 0;
    long repaired = 0;
    long unrecoverable = 0;
    std::vector<std::string> unrecoverable_ids;
};

// Ids are optional; positional indices are used when absent.
RepairSummary repair_report(const std::vector<RepairOutcome>& outcomes,
                            const std::vector<std::string>& ids = {});

const char* to_string(RepairStatus status);

}  // namespace umr
