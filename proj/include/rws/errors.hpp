#pragma once

// ---------------------------------------------------------------------------
// Error taxonomy for the streams toolkit.  Each error type maps to a distinct
// process exit code in the command-line tool (see tools/rws.cpp).
// ---------------------------------------------------------------------------

#include <stdexcept>
#include <string>

namespace rws {

// Base class so callers can catch everything from this library at once.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Declared working memory exceeds the configured budget, too many streams
// attached, or a configuration that cannot run within the model's resources
// (e.g. a sort with room for fewer than two records).
class BudgetError : public Error {
public:
    explicit BudgetError(const std::string& what) : Error(what) {}
};

// The configured pass limit would be exceeded by the next head traversal.
class PassLimitError : public Error {
public:
    explicit PassLimitError(const std::string& what) : Error(what) {}
};

// A serialized container/snapshot is malformed (bad magic, truncated, bad
// field values).
class FormatError : public Error {
public:
    explicit FormatError(const std::string& what) : Error(what) {}
};

// A well-formed payload that does not decode (corrupt coder stream, grammar
// expansion cycle, and similar).
class DecodeError : public Error {
public:
    explicit DecodeError(const std::string& what) : Error(what) {}
};

// Input violates a documented precondition (e.g. a string that is not the
// transform image of any input, or a non-permutation).
class InvalidInputError : public Error {
public:
    explicit InvalidInputError(const std::string& what) : Error(what) {}
};

}  // namespace rws
