#pragma once

#include <stdexcept>
#include <string>

namespace wirehead {

// Parameter outside its documented domain (grid too small, gamma out of
// range, negative surge, zero episodes...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input to a closed-form calculator outside the formula's domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Non-finite reward or other arithmetic that cannot be represented.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// API misuse, e.g. stepping a finished game.
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class IoError : public std::runtime_error {
 public:
  IoError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(path) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wirehead
