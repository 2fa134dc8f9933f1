#include "doctest.h"
#include "test_support.hpp"

#include "umr/conllu.hpp"

using namespace umr;

namespace {

ConlluSentence parse_one(const std::string& text) {
    auto result = parse_conllu(text);
    REQUIRE(result.issues.empty());
    REQUIRE(result.sentences.size() == 1);
    return result.sentences[0];
}

}  // namespace

TEST_CASE("the walked fixture parses with walked as root") {
    auto result = parse_conllu(testsupport::read_file(testsupport::fixture_path("walked.conllu")));
    CHECK(result.issues.empty());
    REQUIRE(result.sentences.size() == 1);
    const ConlluSentence& s = result.sentences[0];
    CHECK(s.sent_id == "fig1");
    CHECK(s.text == "They walked on the street");
    REQUIRE(s.tokens.size() == 5);
    CHECK(s.root_index() == 1);
    CHECK(s.tokens[1].form == "walked");
    CHECK(s.tokens[0].feats.at("Person") == "3");
    CHECK(s.tokens[0].feats.at("Number") == "Plur");
    CHECK(s.tokens[4].head == 2);
    CHECK(s.tokens[4].deprel == "obl");
}

TEST_CASE("empty input yields no sentences") {
    auto result = parse_conllu("");
    CHECK(result.sentences.empty());
    CHECK(result.issues.empty());
}

TEST_CASE("self-loop head is a cycle") {
    std::string text = "1\tho\tho\tINTJ\t_\t_\t1\tdiscourse\t_\t_\n";
    auto result = parse_conllu(text);
    CHECK(result.sentences.empty());
    REQUIRE(result.issues.size() == 1);
    CHECK(result.issues[0].code == ConlluCode::CyclicHeads);
}

TEST_CASE("two-node cycle is reported with its line") {
    std::string text =
        "# sent_id = cyc\n"
        "1\ta\ta\tNOUN\t_\t_\t2\tnsubj\t_\t_\n"
        "2\tb\tb\tNOUN\t_\t_\t1\tobj\t_\t_\n";
    auto result = parse_conllu(text);
    CHECK(result.sentences.empty());
    REQUIRE(result.issues.size() == 1);
    CHECK(result.issues[0].code == ConlluCode::CyclicHeads);
    CHECK(result.issues[0].line == 2);
    CHECK(result.issues[0].sent_id == "cyc");
}

TEST_CASE("wrong column count is reported by line number") {
    std::string text =
        "1\tok\tok\tNOUN\t_\t_\t0\troot\t_\t_\n"
        "\n"
        "1\tbad\tbad\n";
    auto result = parse_conllu(text);
    CHECK(result.sentences.size() == 1);
    REQUIRE(result.issues.size() == 1);
    CHECK(result.issues[0].code == ConlluCode::WrongColumnCount);
    CHECK(result.issues[0].line == 3);
}

TEST_CASE("non-contiguous ids and multiple roots") {
    auto r1 = parse_conllu("1\ta\ta\tNOUN\t_\t_\t0\troot\t_\t_\n"
                           "3\tb\tb\tNOUN\t_\t_\t1\tobj\t_\t_\n");
    REQUIRE(r1.issues.size() == 1);
    CHECK(r1.issues[0].code == ConlluCode::NonContiguousIds);

    auto r2 = parse_conllu("1\ta\ta\tNOUN\t_\t_\t0\troot\t_\t_\n"
                           "2\tb\tb\tNOUN\t_\t_\t0\troot\t_\t_\n");
    REQUIRE(r2.issues.size() == 1);
    CHECK(r2.issues[0].code == ConlluCode::MultipleRoots);

    auto r3 = parse_conllu("1\ta\ta\tNOUN\t_\t_\t7\tobj\t_\t_\n");
    REQUIRE(r3.issues.size() == 1);
    CHECK(r3.issues[0].code == ConlluCode::HeadOutOfRange);
}

TEST_CASE("multiword ranges and empty nodes are skipped") {
    std::string text =
        "1-2\tcannot\t_\t_\t_\t_\t_\t_\t_\t_\n"
        "1\tcan\tcan\tAUX\t_\t_\t0\troot\t_\t_\n"
        "2\tnot\tnot\tPART\t_\t_\t1\tadvmod\t_\t_\n"
        "2.1\telided\telide\tVERB\t_\t_\t_\t_\t_\t_\n";
    ConlluSentence s = parse_one(text);
    CHECK(s.tokens.size() == 2);
}

TEST_CASE("serialize then reparse is identity on all fields") {
    auto text = testsupport::read_file(testsupport::fixture_path("walked.conllu"));
    ConlluSentence s = parse_one(text);
    ConlluSentence back = parse_one(serialize_conllu(s));
    CHECK(back.sent_id == s.sent_id);
    CHECK(back.text == s.text);
    REQUIRE(back.tokens.size() == s.tokens.size());
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
        CHECK(back.tokens[i].id == s.tokens[i].id);
        CHECK(back.tokens[i].form == s.tokens[i].form);
        CHECK(back.tokens[i].lemma == s.tokens[i].lemma);
        CHECK(back.tokens[i].upos == s.tokens[i].upos);
        CHECK(back.tokens[i].feats == s.tokens[i].feats);
        CHECK(back.tokens[i].head == s.tokens[i].head);
        CHECK(back.tokens[i].deprel == s.tokens[i].deprel);
    }
}

TEST_CASE("normalize_tags merges <Architect> into one token") {
    std::string text =
        "1\t<\t<\tPUNCT\t_\t_\t4\tpunct\t_\t_\n"
        "2\tArchitect\tArchitect\tPROPN\t_\tNumber=Sing\t4\tnsubj\t_\t_\n"
        "3\t>\t>\tPUNCT\t_\t_\t2\tpunct\t_\t_\n"
        "4\tsays\tsay\tVERB\t_\t_\t0\troot\t_\t_\n"
        "5\thi\thi\tINTJ\t_\t_\t4\tobj\t_\t_\n";
    ConlluSentence s = parse_one(text);
    ConlluSentence n = normalize_tags(s);
    REQUIRE(n.tokens.size() == 3);
    CHECK(n.tokens[0].form == "<Architect>");
    CHECK(n.tokens[0].upos == "PROPN");
    CHECK(n.tokens[0].head == 2);       // says
    CHECK(n.tokens[1].form == "says");
    CHECK(n.tokens[1].head == 0);
    CHECK(n.tokens[2].head == 2);
    CHECK(n.root_index() == 1);

    // idempotent
    ConlluSentence again = normalize_tags(n);
    REQUIRE(again.tokens.size() == n.tokens.size());
    for (std::size_t i = 0; i < n.tokens.size(); ++i) {
        CHECK(again.tokens[i].form == n.tokens[i].form);
        CHECK(again.tokens[i].head == n.tokens[i].head);
    }
}

TEST_CASE("normalize_tags merges bracketed Builder tags too") {
    std::string text =
        "1\t[\t[\tPUNCT\t_\t_\t2\tpunct\t_\t_\n"
        "2\tBuilder\tBuilder\tPROPN\t_\t_\t3\tnsubj\t_\t_\n"
        "3\t]\t]\tPUNCT\t_\t_\t2\tpunct\t_\t_\n"
        "4\tmoves\tmove\tVERB\t_\t_\t0\troot\t_\t_\n";
    // note: "]" ends the triple only when it directly follows the middle token
    ConlluSentence s = parse_one(text);
    ConlluSentence n = normalize_tags(s);
    REQUIRE(n.tokens.size() == 2);
    CHECK(n.tokens[0].form == "[Builder]");
    CHECK(n.tokens[1].form == "moves");
}

TEST_CASE("sentences without bracket tags are unchanged") {
    auto text = testsupport::read_file(testsupport::fixture_path("walked.conllu"));
    ConlluSentence s = parse_one(text);
    ConlluSentence n = normalize_tags(s);
    REQUIRE(n.tokens.size() == s.tokens.size());
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
        CHECK(n.tokens[i].form == s.tokens[i].form);
        CHECK(n.tokens[i].head == s.tokens[i].head);
    }
}

TEST_CASE("normalize_tags preserves tree-ness") {
    std::string text =
        "1\t<\t<\tPUNCT\t_\t_\t2\tpunct\t_\t_\n"
        "2\tBuilder\tBuilder\tPROPN\t_\t_\t0\troot\t_\t_\n"
        "3\t>\t>\tPUNCT\t_\t_\t2\tpunct\t_\t_\n"
        "4\thi\thi\tINTJ\t_\t_\t2\tdiscourse\t_\t_\n";
    ConlluSentence s = parse_one(text);
    ConlluSentence n = normalize_tags(s);
    REQUIRE(n.tokens.size() == 2);
    CHECK(n.tokens[0].form == "<Builder>");
    CHECK(n.tokens[0].head == 0);  // still the root
    CHECK(n.tokens[1].head == 1);
    // still parses as a valid sentence
    auto rt = parse_conllu(serialize_conllu(n));
    CHECK(rt.issues.empty());
    CHECK(rt.sentences.size() == 1);
}
