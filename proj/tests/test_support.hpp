#pragma once

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

#include "umr/graph.hpp"
#include "umr/metrics.hpp"
#include "umr/penman.hpp"

namespace testsupport {

inline std::string fixture_path(const std::string& name) {
    return std::string(UMR_FIXTURE_DIR) + "/" + name;
}

inline std::string data_path(const std::string& name) {
    return std::string(UMR_DATA_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline umr::SemanticGraph load_fixture_graph(const std::string& name) {
    return umr::parse_penman(read_file(fixture_path(name)));
}

inline std::vector<umr::PenmanBlock> fixture_blocks() {
    return umr::read_penman_blocks_file(fixture_path("graphs.penman"));
}

// Independent oracle: count matched triples under an explicit alignment by
// direct set lookup, with the same normalization conventions as the metrics
// (lowercased roles, inverse-role rewrite). Used to cross-check both the
// exact search and the hill climber.
inline long naive_matched(const umr::SemanticGraph& pred, const umr::SemanticGraph& gold,
                          const std::map<std::string, std::string>& mapping,
                          bool normalize_case = true) {
    auto norm = [&](const umr::SemanticGraph& g) {
        std::multiset<std::string> keys;
        std::string top_var;
        std::vector<umr::Triple> rels_and_attrs;
        for (auto t : umr::triples(g)) {
            if (normalize_case) {
                for (char& c : t.role) c = static_cast<char>(std::tolower(c));
            }
            if (t.kind == umr::TripleKind::Relation && t.role.size() > 3 &&
                t.role.ends_with("-of") && t.role != "consist-of") {
                std::swap(t.arg1, t.arg2);
                t.role = t.role.substr(0, t.role.size() - 3);
            }
            rels_and_attrs.push_back(t);
        }
        return rels_and_attrs;
    };
    auto key = [](const umr::Triple& t) {
        return std::to_string(static_cast<int>(t.kind)) + "\x01" + t.arg1 + "\x01" + t.role +
               "\x01" + t.arg2 + (t.quoted ? "\x01q" : "");
    };
    std::multiset<std::string> gold_keys;
    for (const auto& t : norm(gold)) gold_keys.insert(key(t));
    long matched = 0;
    for (auto t : norm(pred)) {
        // map variables into gold space; unmapped variables cannot match
        auto map_var = [&](const std::string& v) -> const std::string* {
            auto it = mapping.find(v);
            return it == mapping.end() ? nullptr : &it->second;
        };
        switch (t.kind) {
            case umr::TripleKind::Top: {
                const std::string* m = map_var(t.arg2);
                if (!m) continue;
                t.arg2 = *m;
                break;
            }
            case umr::TripleKind::Instance:
            case umr::TripleKind::Attribute: {
                const std::string* m = map_var(t.arg1);
                if (!m) continue;
                t.arg1 = *m;
                break;
            }
            case umr::TripleKind::Relation: {
                const std::string* m1 = map_var(t.arg1);
                const std::string* m2 = map_var(t.arg2);
                if (!m1 || !m2) continue;
                t.arg1 = *m1;
                t.arg2 = *m2;
                break;
            }
        }
        auto it = gold_keys.find(key(t));
        if (it != gold_keys.end()) {
            gold_keys.erase(it);  // multiset consumption
            ++matched;
        }
    }
    return matched;
}

inline std::multiset<umr::Triple> triple_multiset(const umr::SemanticGraph& g) {
    auto v = umr::triples(g);
    return std::multiset<umr::Triple>(v.begin(), v.end());
}

}  // namespace testsupport
