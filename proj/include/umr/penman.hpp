#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "umr/graph.hpp"

namespace umr {

// Parses a single parenthesized PENMAN expression. Re-entrancy is expressed
// as a bare variable token (or a parenthesized bare variable). Attribute
// values keep their surface form; quoted strings keep their content with a
// flag recording quotedness.
//
// Throws ParseError: UnbalancedParens, DuplicateVariable, UndefinedVariable,
// EmptyInput, UnexpectedToken, MissingConcept, UnterminatedString.
SemanticGraph parse_penman(std::string_view text);

struct SerializeOptions {
    bool multiline = true;
    int indent = 2;
};

// Deterministic serialization in stored child order. Every edge is emitted
// exactly once; edges that can only be reached against their direction are
// written with an "-of" inverted role. Throws SerializeError when some
// variable is unreachable from top even undirected.
std::string serialize_penman(const SemanticGraph& g, const SerializeOptions& opts = {});

// One graph in a blank-line-separated PENMAN block file. AMR-style comment
// headers "# ::id <id>" and "# ::snt <text>" are recognized; other comment
// lines are ignored.
struct PenmanBlock {
    std::string id;
    std::string snt;
    std::string text;    // the PENMAN expression, verbatim
    int line = 0;        // 1-based line of the first text line
};

std::vector<PenmanBlock> read_penman_blocks(std::istream& in);
std::vector<PenmanBlock> read_penman_blocks_file(const std::string& path);

void write_penman_block(std::ostream& out, const PenmanBlock& block);

}  // namespace umr
