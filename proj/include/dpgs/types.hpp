#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dpgs {

using NodeId = std::uint32_t;
using SuperId = std::uint32_t;
using Weight = std::uint64_t;

// Raised for malformed edge lists and summary files. `line` is 1-based, or 0
// when the problem is not tied to a particular line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line == 0 ? what
                                     : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace dpgs
