#pragma once

#include <stdexcept>
#include <string>

namespace blazeclass {

/// Raised for malformed input data files (training files, JSON lines,
/// lexicon/emoji tables). Carries the offending location in the message.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& path, std::size_t line, const std::string& what)
      : std::runtime_error(path + ":" + std::to_string(line) + ": " + what),
        path_(path),
        line_(line) {}

  const std::string& path() const { return path_; }
  std::size_t line() const { return line_; }

 private:
  std::string path_;
  std::size_t line_;
};

/// Base class for model container read failures.
class ModelIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The file does not start with the container magic.
class BadMagicError : public ModelIoError {
 public:
  explicit BadMagicError(const std::string& path)
      : ModelIoError(path + ": not a model file") {}
};

/// The container declares a format version this build cannot read.
class BadVersionError : public ModelIoError {
 public:
  BadVersionError(const std::string& path, unsigned version)
      : ModelIoError(path + ": unsupported container version " +
                     std::to_string(version)) {}
};

/// The file ends before the declared payload does.
class TruncatedError : public ModelIoError {
 public:
  explicit TruncatedError(const std::string& path)
      : ModelIoError(path + ": truncated container") {}
};

}  // namespace blazeclass
