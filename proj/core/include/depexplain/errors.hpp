#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace depexplain {

// Base class for every error raised by the library. Input problems are
// reported through these types; programming errors use the standard ones.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A class file that violates the binary format (bad magic, truncated data,
// constant-pool indices out of range, bad descriptors).
class MalformedClassFile : public Error {
 public:
  using Error::Error;
};

// The container is not a readable ZIP archive.
class UnreadableArchive : public Error {
 public:
  UnreadableArchive(std::string path, const std::string& what)
      : Error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

// One ZIP entry could not be extracted; the rest of the archive is usable.
class MalformedZipEntry : public Error {
 public:
  using Error::Error;
};

class MalformedTreeLine : public Error {
 public:
  MalformedTreeLine(std::size_t line_number, const std::string& what)
      : Error("line " + std::to_string(line_number) + ": " + what), line_number_(line_number) {}
  std::size_t line_number() const noexcept { return line_number_; }

 private:
  std::size_t line_number_;
};

class UnknownMajor : public Error {
 public:
  explicit UnknownMajor(int major)
      : Error("unknown class-file major version " + std::to_string(major)), major_(major) {}
  int major() const noexcept { return major_; }

 private:
  int major_;
};

// Raised by the renderer when a categorized breakage violates its own
// invariants (e.g. a DIRECT category without culprits).
class TemplateDataMissing : public Error {
 public:
  using Error::Error;
};

// Missing or unreadable pipeline input; carries the offending path.
class InputError : public Error {
 public:
  InputError(std::string path, const std::string& what)
      : Error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace depexplain
