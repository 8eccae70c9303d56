#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "frobtoric/divisor.hpp"
#include "frobtoric/errors.hpp"
#include "frobtoric/lattice.hpp"

namespace frobtoric {

class FanParseError : public InputError {
 public:
  FanParseError(std::size_t line, std::size_t column, const std::string& detail, const std::string& source = "")
      : InputError((source.empty() ? "" : source + ":") + std::to_string(line) + ":" + std::to_string(column) + ": " +
                   detail),
        line_(line),
        column_(column),
        detail_(detail) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& detail() const { return detail_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string detail_;
};

struct FanFile {
  Fan fan;
  std::vector<ToricDivisor> divisors;  // coefficients in ray-id order
  std::vector<long long> ray_ids;      // sorted ids; index = ray index in the fan
};

// Line format:
//   rank <n>
//   ray <id> <c_1> ... <c_n>
//   cone <rayid> <rayid> ...      (maximal cones; faces added automatically)
//   divisor [name] <a per ray, in ray-id order>
//   # comment
FanFile parse_fan_text(const std::string& text);
FanFile parse_fan_file(const std::string& path);

// A --divisor argument: a divisor name from the file or a comma list.
ToricDivisor resolve_divisor(const FanFile& file, const std::string& arg);

}  // namespace frobtoric
