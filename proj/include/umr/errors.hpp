#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace umr {

// Base class for all hard failures raised by this library. Soft problems
// (validation findings, malformed corpus blocks, unrecoverable repairs) are
// returned as data instead.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ParseCode {
    UnbalancedParens,
    DuplicateVariable,
    UndefinedVariable,
    EmptyInput,
    UnexpectedToken,
    MissingConcept,
    UnterminatedString,
};

const char* to_string(ParseCode code);

class ParseError : public Error {
public:
    ParseError(ParseCode code, std::size_t position, const std::string& what_arg)
        : Error(what_arg), code(code), position(position) {}

    ParseCode code;
    std::size_t position;  // byte offset into the input text
};

class SerializeError : public Error {
public:
    SerializeError(std::vector<std::string> unreachable, const std::string& what_arg)
        : Error(what_arg), unreachable(std::move(unreachable)) {}

    std::vector<std::string> unreachable;
};

// Failure codes for table loading, corpus machinery and metric preconditions.
enum class ToolCode {
    TooLarge,
    LengthMismatch,
    IdMismatch,
    EmptyCorpus,
    RatiosInvalid,
    DuplicateSourceRole,
    EmptyCandidates,
    UnknownSelector,
    UnmappableRoot,
    CountMismatch,
    BadConfig,
    IoError,
};

const char* to_string(ToolCode code);

class ToolError : public Error {
public:
    ToolError(ToolCode code, const std::string& what_arg) : Error(what_arg), code(code) {}

    ToolCode code;
};

}  // namespace umr
