#pragma once

#include <stdexcept>
#include <string>

namespace pathcast {

/// Error while reading a structured text file. Carries the source name and
/// the 1-based line number of the offending row.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& what)
      : std::runtime_error(source + ", line " + std::to_string(line) + ": " + what),
        source_(std::move(source)),
        line_(line) {}

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

}  // namespace pathcast
