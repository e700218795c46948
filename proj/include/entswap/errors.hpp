#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace entswap {

// A scalar argument lies outside its admissible interval (p, eta, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Parameters describe something that is not a density matrix. Carries the
// offending eigenvalue so callers can report how far outside the set it is.
class InvalidParametersError : public std::invalid_argument {
 public:
  InvalidParametersError(const std::string& what, double offending_eigenvalue)
      : std::invalid_argument(what), eigenvalue_(offending_eigenvalue) {}

  double eigenvalue() const noexcept { return eigenvalue_; }

 private:
  double eigenvalue_;
};

// Sequence arguments whose lengths do not fit together (n+1 links vs n etas).
class LengthMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A swap inside a chain failed; node is the 1-based repeater index.
class ChainSwapError : public std::runtime_error {
 public:
  ChainSwapError(std::size_t node, const std::string& what)
      : std::runtime_error("repeater " + std::to_string(node) + ": " + what), node_(node) {}

  std::size_t node() const noexcept { return node_; }

 private:
  std::size_t node_;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  IoError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(path) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace entswap
