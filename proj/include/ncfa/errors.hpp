#pragma once

#include <stdexcept>
#include <string>

namespace ncfa {

// Input that could not be parsed: files, group specs, CLI arguments.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Structured input that parsed but failed a mathematical validity check
// (non-unitary irrep, incomplete catalog, broken Cayley table, ...).
struct VerificationError : std::runtime_error {
  explicit VerificationError(const std::string& what) : std::runtime_error(what) {}
};

// A precondition violation: bad tolerance, size cap exceeded, mismatched
// group/catalog, index out of range.
struct InvalidArgument : std::invalid_argument {
  explicit InvalidArgument(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace ncfa
