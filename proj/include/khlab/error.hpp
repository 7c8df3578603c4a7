#pragma once

#include <stdexcept>
#include <string>

namespace khlab {

enum class ErrorKind {
  InvalidInput,
  Parse,
  ResourceCap,
  NotSimplicial,
  RankDeficient,
  ShapeMismatch,
  NotHilbertPolynomial,
  UnstableFit,
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised when a sumset level (or a counting table) would exceed the
/// configured point ceiling. `level()` is the last level that was completed.
class ResourceCapError : public Error {
 public:
  ResourceCapError(const std::string& what, int level)
      : Error(ErrorKind::ResourceCap, what), level_(level) {}

  int level() const noexcept { return level_; }

 private:
  int level_;
};

}  // namespace khlab
