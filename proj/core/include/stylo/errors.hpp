#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stylo {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// -- text measurement --------------------------------------------------------

class EmptyTextError : public Error {
 public:
  EmptyTextError() : Error("text is empty after whitespace trim") {}
};

// -- lexicon ------------------------------------------------------------------

class MalformedLineError : public Error {
 public:
  MalformedLineError(std::size_t line_no, const std::string& detail)
      : Error("malformed lexicon line " + std::to_string(line_no) + ": " + detail),
        line_no_(line_no) {}
  std::size_t line_no() const { return line_no_; }

 private:
  std::size_t line_no_;
};

// -- features ------------------------------------------------------------------

class EmptyDocumentError : public Error {
 public:
  explicit EmptyDocumentError(const std::string& detail = "document contains no words")
      : Error(detail) {}
};

class DegenerateStatsError : public Error {
 public:
  explicit DegenerateStatsError(const std::string& detail)
      : Error("degenerate text statistics: " + detail) {}
};

// -- dataset -------------------------------------------------------------------

class BadHeaderError : public Error {
 public:
  explicit BadHeaderError(const std::string& got)
      : Error("bad corpus header: expected 'id,text,label[,pair_id]', got '" + got + "'") {}
};

class BadLabelError : public Error {
 public:
  BadLabelError(std::size_t row, const std::string& got)
      : Error("row " + std::to_string(row) + ": bad label '" + got +
              "' (expected 'human' or 'ai')"),
        row_(row) {}
  std::size_t row() const { return row_; }

 private:
  std::size_t row_;
};

class DuplicateIdError : public Error {
 public:
  DuplicateIdError(std::size_t row, const std::string& id)
      : Error("row " + std::to_string(row) + ": duplicate document id '" + id + "'"),
        row_(row) {}
  std::size_t row() const { return row_; }

 private:
  std::size_t row_;
};

class TooFewRowsError : public Error {
 public:
  explicit TooFewRowsError(const std::string& detail) : Error("too few rows: " + detail) {}
};

class SchemaMismatchError : public Error {
 public:
  explicit SchemaMismatchError(const std::string& detail)
      : Error("feature schema mismatch: " + detail) {}
};

// -- models --------------------------------------------------------------------

class NonFiniteLossError : public Error {
 public:
  explicit NonFiniteLossError(const std::string& detail)
      : Error("training loss became non-finite: " + detail) {}
};

class NoConvergenceError : public Error {
 public:
  explicit NoConvergenceError(std::size_t iterations)
      : Error("solver exceeded the iteration cap after " + std::to_string(iterations) +
              " iterations"),
        iterations_(iterations) {}
  std::size_t iterations() const { return iterations_; }

 private:
  std::size_t iterations_;
};

class UnsupportedModelError : public Error {
 public:
  explicit UnsupportedModelError(const std::string& family)
      : Error("operation not supported for model family '" + family + "'") {}
};

class UnfittedMemberError : public Error {
 public:
  UnfittedMemberError() : Error("ensemble member is not fitted") {}
};

// -- evaluation ----------------------------------------------------------------

class LengthMismatchError : public Error {
 public:
  LengthMismatchError(std::size_t a, std::size_t b)
      : Error("length mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

class SingleClassError : public Error {
 public:
  SingleClassError() : Error("both classes must be present") {}
};

class UnknownFeatureError : public Error {
 public:
  explicit UnknownFeatureError(const std::string& name)
      : Error("unknown feature '" + name + "'") {}
};

// -- synthesis -----------------------------------------------------------------

class ConfigInvalidError : public Error {
 public:
  explicit ConfigInvalidError(const std::string& detail)
      : Error("invalid config: " + detail) {}
};

// -- io ------------------------------------------------------------------------

class IoError : public Error {
 public:
  explicit IoError(const std::string& detail) : Error("io error: " + detail) {}
};

}  // namespace stylo
