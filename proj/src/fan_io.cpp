#include "frobtoric/fan_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace frobtoric {

namespace {

struct Token {
  std::string text;
  std::size_t column;
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    const auto start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '#') ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

std::optional<long long> as_int(const std::string& s) {
  long long v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

long long need_int(const Token& t, std::size_t line) {
  auto v = as_int(t.text);
  if (!v) throw FanParseError(line, t.column, "expected an integer, got '" + t.text + "'");
  return *v;
}

}  // namespace

FanFile parse_fan_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  std::optional<std::size_t> rank;
  std::map<long long, std::pair<LatticePoint, std::size_t>> rays;  // id -> (coords, line)
  std::vector<std::pair<std::vector<Token>, std::size_t>> cone_lines;
  std::vector<std::pair<std::vector<Token>, std::size_t>> divisor_lines;

  while (std::getline(in, line)) {
    ++lineno;
    const auto toks = tokenize(line);
    if (toks.empty()) continue;
    const auto& kw = toks[0].text;
    if (kw == "rank") {
      if (toks.size() != 2) throw FanParseError(lineno, toks[0].column, "rank takes exactly one value");
      if (rank) throw FanParseError(lineno, toks[0].column, "rank given twice");
      const auto n = need_int(toks[1], lineno);
      if (n < 1 || n > 6) throw FanParseError(lineno, toks[1].column, "rank must be between 1 and 6");
      rank = static_cast<std::size_t>(n);
    } else if (kw == "ray") {
      if (!rank) throw FanParseError(lineno, toks[0].column, "ray before rank");
      if (toks.size() != *rank + 2)
        throw FanParseError(lineno, toks[0].column, "ray needs an id and " + std::to_string(*rank) + " coordinates");
      const auto id = need_int(toks[1], lineno);
      if (rays.count(id)) throw FanParseError(lineno, toks[1].column, "duplicate ray id " + toks[1].text);
      LatticePoint v(*rank);
      for (std::size_t i = 0; i < *rank; ++i) v[i] = need_int(toks[i + 2], lineno);
      if (v.is_zero()) throw FanParseError(lineno, toks[2].column, "zero ray");
      rays.emplace(id, std::make_pair(v, lineno));
    } else if (kw == "cone") {
      if (toks.size() < 2) throw FanParseError(lineno, toks[0].column, "cone needs at least one ray id");
      cone_lines.emplace_back(toks, lineno);
    } else if (kw == "divisor") {
      divisor_lines.emplace_back(toks, lineno);
    } else {
      throw FanParseError(lineno, toks[0].column, "unknown keyword '" + kw + "'");
    }
  }
  if (!rank) throw FanParseError(lineno + 1, 1, "missing rank line");
  if (cone_lines.empty()) throw FanParseError(lineno + 1, 1, "no cones given");

  FanFile out;
  std::map<long long, int> index;
  std::vector<LatticePoint> ray_list;
  for (const auto& [id, v] : rays) {
    index[id] = static_cast<int>(ray_list.size());
    ray_list.push_back(v.first);
    out.ray_ids.push_back(id);
  }
  std::vector<RaySet> cones;
  for (const auto& [toks, ln] : cone_lines) {
    RaySet c;
    for (std::size_t i = 1; i < toks.size(); ++i) {
      const auto id = need_int(toks[i], ln);
      const auto it = index.find(id);
      if (it == index.end()) throw FanParseError(ln, toks[i].column, "unknown ray id " + toks[i].text);
      c.push_back(it->second);
    }
    std::sort(c.begin(), c.end());
    if (std::adjacent_find(c.begin(), c.end()) != c.end()) throw FanParseError(ln, toks[0].column, "repeated ray in cone");
    cones.push_back(std::move(c));
  }
  out.fan = validate_fan(ray_list, cones);

  for (const auto& [toks, ln] : divisor_lines) {
    ToricDivisor d;
    std::size_t first = 1;
    if (toks.size() > 1 && !as_int(toks[1].text)) {
      d.name = toks[1].text;
      first = 2;
    }
    if (toks.size() - first != ray_list.size())
      throw FanParseError(ln, toks[0].column,
                          "divisor needs " + std::to_string(ray_list.size()) + " coefficients, got " +
                              std::to_string(toks.size() - first));
    for (std::size_t i = first; i < toks.size(); ++i) d.coeffs.push_back(need_int(toks[i], ln));
    for (const auto& other : out.divisors)
      if (!d.name.empty() && other.name == d.name) throw FanParseError(ln, toks[1].column, "duplicate divisor name " + d.name);
    out.divisors.push_back(std::move(d));
  }
  return out;
}

FanFile parse_fan_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open fan file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_fan_text(ss.str());
  } catch (const FanParseError& e) {
    throw FanParseError(e.line(), e.column(), e.detail(), path);
  }
}

ToricDivisor resolve_divisor(const FanFile& file, const std::string& arg) {
  for (const auto& d : file.divisors)
    if (!d.name.empty() && d.name == arg) return d;
  ToricDivisor d;
  std::stringstream ss(arg);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const auto v = as_int(part);
    if (!v) throw InputError("divisor '" + arg + "' is neither a name in the fan file nor a comma-separated list");
    d.coeffs.push_back(*v);
  }
  check_divisor(file.fan, d);
  return d;
}

}  // namespace frobtoric
