#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "umr/graph.hpp"

namespace umr {

struct UmrEntry {
    std::string doc_id;
    std::string sent_id;
    std::string sentence;
    std::string language = "en";
    SemanticGraph graph;
    std::set<std::string> tags;
};

struct CorpusIssue {
    std::string file;
    int line = 0;
    std::string sent_id;
    std::string message;
};

struct CorpusReadResult {
    std::vector<UmrEntry> entries;
    std::vector<CorpusIssue> issues;          // malformed blocks, with file + line
    long skipped_doc_sections = 0;            // document-level annotation blocks ignored
};

// Reads corpus block files; see docs/formats.md for the grammar. Blocks are
// introduced by "# :: sntN <sentence>"; the graph follows a "# sentence
// level graph:" marker. Alignment and document-level sections are skipped.
CorpusReadResult read_umr_corpus(const std::vector<std::string>& files);
CorpusReadResult read_umr_blocks(std::istream& in, const std::string& filename);

void write_umr_blocks(std::ostream& out, const std::vector<UmrEntry>& entries);

// lowercase + whitespace collapse + terminal punctuation strip
std::string normalize_sentence(std::string_view sentence);

// Splits entries into (kept, excluded): excluded iff the normalized sentence
// appears in the normalized AMR sentence set.
std::pair<std::vector<UmrEntry>, std::vector<UmrEntry>> exclude_overlap(
    const std::vector<UmrEntry>& entries, const std::set<std::string>& amr_sentences);

extern const std::vector<std::string> kMinecraftPatterns;  // {"Builder", "Architect"}

// Adds the "minecraft" tag to entries whose sentence contains any pattern.
// Sentence and graph fields are never modified.
std::vector<UmrEntry> tag_minecraft(std::vector<UmrEntry> entries,
                                    const std::vector<std::string>& patterns = kMinecraftPatterns);

// Keeps at most `cap` entries whose sentence starts with `prefix`, in stable
// corpus order (or a seeded random selection when `seed` is set); all other
// entries pass through.
std::vector<UmrEntry> downsample_builder(const std::vector<UmrEntry>& entries, long cap,
                                         std::optional<std::uint32_t> seed = std::nullopt,
                                         const std::string& prefix = "[Builder");

struct FilterSpec {
    std::string kind;      // "exclude-overlap" | "builder-downsample" | "language"
    std::string text_arg;  // overlap file / language code
    long int_arg = 0;      // downsample cap
};

struct SplitSpec {
    std::uint32_t seed = 0;
    double train_ratio = 0.8, dev_ratio = 0.1, test_ratio = 0.1;
    bool use_explicit_ids = false;
    std::map<std::string, std::vector<std::string>> explicit_ids;  // partition -> sent_ids
    std::vector<FilterSpec> filters;
    std::set<std::string> amr_sentences;  // data for exclude-overlap
};

struct SplitManifest {
    std::uint32_t seed = 0;
    std::vector<std::pair<std::string, long>> filter_counts;  // filter kind -> entries removed
    std::map<std::string, std::vector<std::string>> partitions;

    std::string to_json() const;
    static SplitManifest from_json(const std::string& text);
    SplitSpec replay_spec() const;  // explicit-id spec reproducing the partitions
};

struct SplitResult {
    std::vector<UmrEntry> train, dev, test;
    SplitManifest manifest;
};

// Applies spec.filters in order, then partitions document-coherently:
// entries sharing a doc_id never straddle partitions. Deterministic given
// spec.seed. Throws ToolError(RatiosInvalid) on bad ratios and
// ToolError(IdMismatch) when explicit ids reference missing entries.
SplitResult build_split(const std::vector<UmrEntry>& entries, const SplitSpec& spec);

}  // namespace umr
