#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dexnet {

// Base class for all library errors. CLI maps these to exit code 1.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid argument or violated precondition.
class ArgumentError : public Error {
 public:
  explicit ArgumentError(const std::string& msg) : Error(msg) {}
};

// Input data contradicts a dataset invariant (duplicate pair, self-loop, ...).
class DataIntegrityError : public Error {
 public:
  explicit DataIntegrityError(const std::string& msg) : Error(msg) {}
};

// Lookup of an unknown token or edge.
class NotFoundError : public Error {
 public:
  explicit NotFoundError(const std::string& msg) : Error(msg) {}
};

// Malformed file or record. `line` is 1-based when the source is a file,
// 0 when unknown.
class SchemaError : public Error {
 public:
  SchemaError(const std::string& msg, std::size_t line = 0)
      : Error(line ? msg + " (line " + std::to_string(line) + ")" : msg),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Missing or inconsistent configuration (e.g. no trusted-token price).
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// Network-level failure after exhausting retries.
class TransportError : public Error {
 public:
  TransportError(const std::string& msg, int attempts)
      : Error(msg + " (after " + std::to_string(attempts) + " attempts)"),
        attempts_(attempts) {}
  int attempts() const { return attempts_; }

 private:
  int attempts_;
};

}  // namespace dexnet
