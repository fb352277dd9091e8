#pragma once

#include <stdexcept>
#include <string>

namespace vem {

/// Invalid or inconsistent model configuration (bad parameters, bad maps,
/// missing files). CLI exit code 3.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input data (CSV/JSON syntax, non-finite values). CLI exit code 2.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Parse failure in a structured text file; carries a 1-based data-row index
/// (header rows are not counted) when one is known.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, long row = -1)
      : InputError(row >= 0 ? what + " (row " + std::to_string(row) + ")" : what),
        row_(row) {}
  long row() const { return row_; }

 private:
  long row_;
};

/// A fitting step failed (rank deficiency, non-convergence, empty data).
/// CLI exit code 4.
class FitError : public std::runtime_error {
 public:
  explicit FitError(const std::string& what) : std::runtime_error(what) {}
};

/// Requested operation is undefined for the given model variant
/// (e.g. a fuel-cut boundary of a medium/heavy-duty parameter set).
class UnsupportedOperation : public std::logic_error {
 public:
  explicit UnsupportedOperation(const std::string& what) : std::logic_error(what) {}
};

/// Division-by-zero style singularity in a model formula.
class SingularityError : public std::runtime_error {
 public:
  explicit SingularityError(const std::string& what) : std::runtime_error(what) {}
};

/// A map was queried where it is undefined (e.g. zero max wheel torque).
class MapDomainError : public std::runtime_error {
 public:
  explicit MapDomainError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace vem
