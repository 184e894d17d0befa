#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace logicnet {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Function id not present in the catalog in use.
class CatalogMiss : public Error {
 public:
  using Error::Error;
};

/// Operand vectors of unequal length.
class DimensionError : public Error {
 public:
  using Error::Error;
};

enum class DataErrorKind {
  io,
  no_header,
  missing_label_column,
  duplicate_feature,
  ragged_row,
  missing_cell,
  bad_label,
  empty_class,
  too_few_rows,
  kind_mismatch,
  unknown_feature,
};

/// Dataset ingestion or validation failure. Each violated invariant has its own kind.
class DataError : public Error {
 public:
  DataError(DataErrorKind kind, const std::string& what) : Error(what), kind_(kind) {}
  DataErrorKind kind() const noexcept { return kind_; }

 private:
  DataErrorKind kind_;
};

class EncodingError : public Error {
 public:
  using Error::Error;
};

class TrainingError : public Error {
 public:
  using Error::Error;
};

/// Formula-table text that fails to parse or resolve. `line()` is 1-based, 0 when not tied to a line.
class ModelError : public Error {
 public:
  ModelError(std::size_t line, const std::string& what)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A value needed to evaluate a network or complex is missing or unusable.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

class TableError : public Error {
 public:
  using Error::Error;
};

}  // namespace logicnet
