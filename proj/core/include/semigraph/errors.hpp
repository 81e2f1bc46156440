#pragma once

// Error reporting. Every failure mode of the library is identified by a
// short stable case name (e.g. "CycleDetected") so that callers, tests and
// the CLI can dispatch on it without parsing prose.

#include <stdexcept>
#include <string>
#include <utility>

namespace semigraph {

class Error : public std::runtime_error {
 public:
  Error(std::string case_name, const std::string& message)
      : std::runtime_error(case_name + ": " + message),
        case_name_(std::move(case_name)) {}

  const std::string& case_name() const { return case_name_; }

 private:
  std::string case_name_;
};

// Input files that fail to parse or violate a schema. Reported separately
// from engine errors: the CLI exits 2 for these and 3 for Error.
class ParseError : public std::runtime_error {
 public:
  // `where` pins down the offending location, e.g. "nodes[3].op" or
  // "line 7".
  ParseError(std::string where, const std::string& message)
      : std::runtime_error(where + ": " + message), where_(std::move(where)) {}

  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

}  // namespace semigraph
