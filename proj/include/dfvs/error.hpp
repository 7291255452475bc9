#pragma once

#include <stdexcept>
#include <string>

namespace dfvs {

/// Malformed input text. Carries the 1-based line number of the offending line.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// A graph value violates its invariants (self-loop, duplicate arc, bad endpoint).
class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An exhaustive search was asked to run above its configured size cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A tree / sphere-cut decomposition is inconsistent with the graph it claims to decompose.
class DecompositionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rotation system does not describe a plane embedding of the graph.
class EmbeddingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dfvs
