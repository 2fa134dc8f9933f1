#include "umr/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "json.hpp"

#include "umr/penman.hpp"

namespace umr {

namespace {

std::string file_stem(const std::string& path) {
    auto slash = path.find_last_of("/\\");
    std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
    auto dot = name.find_last_of('.');
    return dot == std::string::npos ? name : name.substr(0, dot);
}

bool starts_with(const std::string& s, const char* prefix) { return s.rfind(prefix, 0) == 0; }

}  // namespace

CorpusReadResult read_umr_blocks(std::istream& in, const std::string& filename) {
    CorpusReadResult result;
    std::string default_doc = file_stem(filename);
    std::string doc_id = default_doc;

    enum class Section { Preamble, Sentence, Graph, Skip };
    Section section = Section::Preamble;

    UmrEntry entry;
    std::string graph_text;
    std::string pending_sent_id;  // meta-info precedes the snt marker
    int graph_line = 0;
    bool have_entry = false;

    auto flush = [&](int at_line) {
        if (!have_entry) return;
        if (graph_text.empty()) {
            result.issues.push_back({filename, at_line, entry.sent_id,
                                     "block has no sentence level graph section"});
        } else {
            try {
                entry.graph = parse_penman(graph_text);
                result.entries.push_back(entry);
            } catch (const ParseError& e) {
                result.issues.push_back({filename, graph_line, entry.sent_id, e.what()});
            }
        }
        entry = UmrEntry{};
        graph_text.clear();
        graph_line = 0;
        have_entry = false;
    };

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();

        if (starts_with(line, "# doc_id ::")) {
            flush(lineno);
            doc_id = line.substr(11);
            while (!doc_id.empty() && doc_id.front() == ' ') doc_id.erase(0, 1);
            section = Section::Preamble;
            continue;
        }
        if (starts_with(line, "# meta-info")) {
            auto pos = line.find("sent_id = ");
            if (pos != std::string::npos) {
                if (have_entry) {
                    entry.sent_id = line.substr(pos + 10);
                } else {
                    pending_sent_id = line.substr(pos + 10);
                }
            }
            continue;
        }
        if (starts_with(line, "# :: snt")) {
            flush(lineno);
            have_entry = true;
            entry.doc_id = doc_id;
            std::size_t i = 8;
            std::string index;
            while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) {
                index += line[i++];
            }
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
            entry.sentence = line.substr(i);
            if (!pending_sent_id.empty()) {
                entry.sent_id = pending_sent_id;
                pending_sent_id.clear();
            } else {
                entry.sent_id = doc_id + ".snt" + (index.empty() ? "0" : index);
            }
            section = Section::Sentence;
            continue;
        }
        if (starts_with(line, "# sentence level graph")) {
            section = Section::Graph;
            continue;
        }
        if (starts_with(line, "# alignment") || starts_with(line, "# document level annotation")) {
            if (section == Section::Graph || section == Section::Sentence) {
                ++result.skipped_doc_sections;
            }
            section = Section::Skip;
            continue;
        }
        if (starts_with(line, "#")) continue;  // separators, Index:/Words: style metadata

        if (line.empty()) continue;
        switch (section) {
            case Section::Sentence:
                // sentence carried on its own line when the snt marker had none
                if (have_entry && entry.sentence.empty() && !starts_with(line, "Index:") &&
                    !starts_with(line, "Words:")) {
                    entry.sentence = line;
                }
                break;
            case Section::Graph:
                if (graph_text.empty()) graph_line = lineno;
                if (!graph_text.empty()) graph_text += "\n";
                graph_text += line;
                break;
            default:
                break;
        }
    }
    flush(lineno);
    return result;
}

CorpusReadResult read_umr_corpus(const std::vector<std::string>& files) {
    CorpusReadResult all;
    for (const auto& path : files) {
        std::ifstream in(path);
        if (!in) throw ToolError(ToolCode::IoError, "cannot open corpus file: " + path);
        CorpusReadResult one = read_umr_blocks(in, path);
        std::move(one.entries.begin(), one.entries.end(), std::back_inserter(all.entries));
        std::move(one.issues.begin(), one.issues.end(), std::back_inserter(all.issues));
        all.skipped_doc_sections += one.skipped_doc_sections;
    }
    return all;
}

void write_umr_blocks(std::ostream& out, const std::vector<UmrEntry>& entries) {
    std::string doc;
    int index = 0;
    for (const auto& e : entries) {
        if (e.doc_id != doc) {
            doc = e.doc_id;
            index = 0;
            out << "# doc_id :: " << doc << "\n\n";
        }
        ++index;
        out << "# :: snt" << index << "\t" << e.sentence << "\n";
        out << "# meta-info :: sent_id = " << e.sent_id << "\n";
        out << "# sentence level graph:\n";
        out << serialize_penman(e.graph) << "\n\n";
    }
}

std::string normalize_sentence(std::string_view sentence) {
    std::string out;
    bool pending_space = false;
    for (char raw : sentence) {
        unsigned char c = static_cast<unsigned char>(raw);
        if (std::isspace(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out += ' ';
            pending_space = false;
        }
        out += static_cast<char>(std::tolower(c));
    }
    while (!out.empty() && (out.back() == '.' || out.back() == '!' || out.back() == '?' ||
                            out.back() == ';' || out.back() == ',')) {
        out.pop_back();
        while (!out.empty() && out.back() == ' ') out.pop_back();
    }
    return out;
}

std::pair<std::vector<UmrEntry>, std::vector<UmrEntry>> exclude_overlap(
    const std::vector<UmrEntry>& entries, const std::set<std::string>& amr_sentences) {
    std::set<std::string> normalized;
    for (const auto& s : amr_sentences) normalized.insert(normalize_sentence(s));
    std::vector<UmrEntry> kept, excluded;
    for (const auto& e : entries) {
        if (normalized.count(normalize_sentence(e.sentence))) {
            excluded.push_back(e);
        } else {
            kept.push_back(e);
        }
    }
    return {std::move(kept), std::move(excluded)};
}

const std::vector<std::string> kMinecraftPatterns = {"Builder", "Architect"};

std::vector<UmrEntry> tag_minecraft(std::vector<UmrEntry> entries,
                                    const std::vector<std::string>& patterns) {
    for (auto& e : entries) {
        for (const auto& p : patterns) {
            if (e.sentence.find(p) != std::string::npos) {
                e.tags.insert("minecraft");
                break;
            }
        }
    }
    return entries;
}

std::vector<UmrEntry> downsample_builder(const std::vector<UmrEntry>& entries, long cap,
                                         std::optional<std::uint32_t> seed,
                                         const std::string& prefix) {
    std::vector<std::size_t> builder_positions;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (entries[i].sentence.rfind(prefix, 0) == 0) builder_positions.push_back(i);
    }
    std::set<std::size_t> keep_builders;
    if (static_cast<long>(builder_positions.size()) <= cap) {
        keep_builders.insert(builder_positions.begin(), builder_positions.end());
    } else if (seed) {
        std::vector<std::size_t> shuffled = builder_positions;
        std::mt19937 rng(*seed);
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        keep_builders.insert(shuffled.begin(), shuffled.begin() + cap);
    } else {
        keep_builders.insert(builder_positions.begin(), builder_positions.begin() + cap);
    }
    std::vector<UmrEntry> out;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        bool is_builder = entries[i].sentence.rfind(prefix, 0) == 0;
        if (!is_builder || keep_builders.count(i)) out.push_back(entries[i]);
    }
    return out;
}

std::string SplitManifest::to_json() const {
    nlohmann::json doc;
    doc["seed"] = seed;
    doc["filters"] = nlohmann::json::array();
    for (const auto& [kind, removed] : filter_counts) {
        doc["filters"].push_back({{"kind", kind}, {"removed", removed}});
    }
    for (const auto& [name, ids] : partitions) doc["partitions"][name] = ids;
    return doc.dump(2);
}

SplitManifest SplitManifest::from_json(const std::string& text) {
    nlohmann::json doc = nlohmann::json::parse(text);
    SplitManifest m;
    m.seed = doc.value("seed", 0u);
    if (doc.contains("filters")) {
        for (const auto& f : doc["filters"]) {
            m.filter_counts.emplace_back(f.value("kind", ""), f.value("removed", 0L));
        }
    }
    if (doc.contains("partitions")) {
        for (auto it = doc["partitions"].begin(); it != doc["partitions"].end(); ++it) {
            m.partitions[it.key()] = it.value().get<std::vector<std::string>>();
        }
    }
    return m;
}

SplitSpec SplitManifest::replay_spec() const {
    SplitSpec spec;
    spec.seed = seed;
    spec.use_explicit_ids = true;
    spec.explicit_ids = partitions;
    return spec;
}

namespace {

std::vector<UmrEntry> apply_filters(const std::vector<UmrEntry>& input, const SplitSpec& spec,
                                    std::vector<std::pair<std::string, long>>& counts) {
    std::vector<UmrEntry> entries = input;
    for (const auto& f : spec.filters) {
        long before = static_cast<long>(entries.size());
        if (f.kind == "exclude-overlap") {
            entries = exclude_overlap(entries, spec.amr_sentences).first;
        } else if (f.kind == "builder-downsample") {
            entries = downsample_builder(entries, f.int_arg);
        } else if (f.kind == "language") {
            std::vector<UmrEntry> kept;
            for (const auto& e : entries) {
                if (e.language == f.text_arg) kept.push_back(e);
            }
            entries = std::move(kept);
        } else {
            throw ToolError(ToolCode::BadConfig, "unknown filter kind: " + f.kind);
        }
        counts.emplace_back(f.kind, before - static_cast<long>(entries.size()));
    }
    return entries;
}

}  // namespace

SplitResult build_split(const std::vector<UmrEntry>& input, const SplitSpec& spec) {
    SplitResult result;
    result.manifest.seed = spec.seed;
    std::vector<UmrEntry> entries = apply_filters(input, spec, result.manifest.filter_counts);

    if (spec.use_explicit_ids) {
        std::map<std::string, const UmrEntry*> by_id;
        for (const auto& e : entries) by_id[e.sent_id] = &e;
        auto fill = [&](const std::string& name, std::vector<UmrEntry>& out) {
            auto it = spec.explicit_ids.find(name);
            if (it == spec.explicit_ids.end()) return;
            for (const auto& id : it->second) {
                auto found = by_id.find(id);
                if (found == by_id.end()) {
                    throw ToolError(ToolCode::IdMismatch, "manifest id not in corpus: " + id);
                }
                out.push_back(*found->second);
                result.manifest.partitions[name].push_back(id);
            }
        };
        fill("train", result.train);
        fill("dev", result.dev);
        fill("test", result.test);
        return result;
    }

    double sum = spec.train_ratio + spec.dev_ratio + spec.test_ratio;
    if (spec.train_ratio < 0 || spec.dev_ratio < 0 || spec.test_ratio < 0 ||
        std::abs(sum - 1.0) > 1e-9) {
        throw ToolError(ToolCode::RatiosInvalid, "split ratios must be >= 0 and sum to 1");
    }

    // document-coherent partitioning: shuffle docs, then fill train/dev/test
    std::vector<std::string> doc_order;
    std::map<std::string, std::vector<std::size_t>> doc_entries;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        auto [it, inserted] = doc_entries.try_emplace(entries[i].doc_id);
        if (inserted) doc_order.push_back(entries[i].doc_id);
        it->second.push_back(i);
    }
    std::mt19937 rng(spec.seed);
    std::shuffle(doc_order.begin(), doc_order.end(), rng);

    const double total = static_cast<double>(entries.size());
    const double train_target = spec.train_ratio * total;
    const double dev_target = spec.dev_ratio * total;
    std::size_t train_n = 0, dev_n = 0;
    for (const auto& doc : doc_order) {
        const auto& idxs = doc_entries[doc];
        std::vector<UmrEntry>* bucket;
        std::string name;
        if (static_cast<double>(train_n) < train_target) {
            bucket = &result.train;
            name = "train";
            train_n += idxs.size();
        } else if (static_cast<double>(dev_n) < dev_target) {
            bucket = &result.dev;
            name = "dev";
            dev_n += idxs.size();
        } else {
            bucket = &result.test;
            name = "test";
        }
        for (std::size_t i : idxs) {
            bucket->push_back(entries[i]);
            result.manifest.partitions[name].push_back(entries[i].sent_id);
        }
    }
    // make all three partitions visible in the manifest even when empty
    result.manifest.partitions.try_emplace("train");
    result.manifest.partitions.try_emplace("dev");
    result.manifest.partitions.try_emplace("test");
    return result;
}

}  // namespace umr
