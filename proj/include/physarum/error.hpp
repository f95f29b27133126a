#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace physarum {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Graph validation.
class DisconnectedGraph : public Error {
 public:
  using Error::Error;
};
class DuplicateEdge : public Error {
 public:
  using Error::Error;
};
class NonPositiveWeight : public Error {
 public:
  using Error::Error;
};
class InvalidTerminal : public Error {
 public:
  using Error::Error;
};
/// Self-loops and endpoints outside [0, node_count).
class InvalidEdge : public Error {
 public:
  using Error::Error;
};

class GenerationFailed : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class MetadataMismatch : public Error {
 public:
  using Error::Error;
};

// Numerical failures.
class NonFiniteConductivity : public Error {
 public:
  using Error::Error;
};
class SolveFailed : public Error {
 public:
  using Error::Error;
};

class DPathExtractionFailed : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace physarum
