#include "doctest.h"
#include "test_support.hpp"

#include "umr/graph.hpp"
#include "umr/penman.hpp"

using namespace umr;
using testsupport::load_fixture_graph;

TEST_CASE("triple cardinality is N+E+A+1 on all fixtures") {
    for (const auto& block : testsupport::fixture_blocks()) {
        CAPTURE(block.id);
        SemanticGraph g = parse_penman(block.text);
        CHECK(triples(g).size() ==
              g.node_count() + g.edges().size() + g.attributes().size() + 1);
    }
}

TEST_CASE("fig1 validates cleanly under the default vocabulary") {
    SemanticGraph g = load_fixture_graph("fig1.penman");
    auto issues = validate_umr(g, UmrVocabulary::defaults());
    CHECK(issues.empty());
    // validation is pure and repeatable
    auto again = validate_umr(g, UmrVocabulary::defaults());
    CHECK(issues == again);
}

TEST_CASE("unknown aspect value is flagged") {
    SemanticGraph g = parse_penman("(r / run-02 :aspect Running)");
    auto issues = validate_umr(g, UmrVocabulary::defaults());
    REQUIRE(issues.size() == 1);
    CHECK(issues[0].code == IssueCode::UnknownAttributeValue);
    CHECK(issues[0].detail == ":aspect Running");
}

TEST_CASE("value roles are unconstrained constants") {
    SemanticGraph g = load_fixture_graph("bibl_s34.penman");
    auto issues = validate_umr(g, UmrVocabulary::defaults());
    CHECK(issues.empty());
}

TEST_CASE("disconnected graphs are reported, not rejected") {
    SemanticGraph g;
    g.add_node("a", "alpha");
    g.add_node("b", "beta");
    g.set_top("a");
    auto issues = validate_umr(g, UmrVocabulary::defaults());
    REQUIRE(issues.size() == 1);
    CHECK(issues[0].code == IssueCode::Disconnected);
    CHECK(issues[0].detail.find("b") != std::string::npos);
}

TEST_CASE("bad role labels are flagged") {
    SemanticGraph g;
    g.add_node("a", "alpha");
    g.set_top("a");
    g.add_attribute("a", "weird role!", "x");
    auto issues = validate_umr(g, UmrVocabulary::defaults());
    REQUIRE(issues.size() == 1);
    CHECK(issues[0].code == IssueCode::BadRoleLabel);
}

TEST_CASE("vocabulary loads from the shipped data file") {
    UmrVocabulary v = UmrVocabulary::load(testsupport::data_path("umr_vocabulary.tsv"));
    // the paper-observed seed values are all present
    CHECK(v.values.at("aspect").count("Activity"));
    CHECK(v.values.at("modstr").count("FullAff"));
    CHECK(v.values.at("refer-number").count("Singular"));
    CHECK(v.values.at("refer-number").count("Plural"));
    CHECK(v.values.at("refer-person").count("3rd"));
    CHECK(v.values.at("mode").count("expressive"));
    // and the file agrees with the builtin defaults
    CHECK(v.values == UmrVocabulary::defaults().values);
}

TEST_CASE("duplicate node definition is rejected at the graph layer") {
    SemanticGraph g;
    g.add_node("a", "alpha");
    CHECK_THROWS_AS(g.add_node("a", "beta"), Error);
}
