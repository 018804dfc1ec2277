#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "caploc/model.hpp"

namespace caploc {

// Raised for malformed "caploc v1" input; `line()` is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  [[nodiscard]] int line() const { return line_; }

 private:
  int line_;
};

// Canonical "caploc v1" text. The header line carries n, m and k; a bare
// "metric" line is followed by one row per site (facilities first).
std::string serialize(const Instance& inst);
Instance parse_instance(std::string_view text);

Instance read_instance_file(const std::string& path);
void write_instance_file(const std::string& path, const Instance& inst);

// 64-bit FNV-1a of the canonical serialization, as 16 hex digits.
std::string digest(const Instance& inst);

}  // namespace caploc
