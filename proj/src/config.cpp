#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "cfl/harness.hpp"

namespace cfl {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t at = s.find(sep, start);
    out.push_back(trim(s.substr(start, at == std::string_view::npos ? std::string_view::npos : at - start)));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return out;
}

bool parse_int(std::string_view s, std::int64_t& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size() && !s.empty();
}

}  // namespace

ConfigError::ConfigError(std::string field, const std::string& message)
    : std::runtime_error(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}

Config Config::parse(std::string_view text) {
  boost::property_tree::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    boost::property_tree::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError("", "line " + std::to_string(e.line()) + ": " + e.message());
  }
  Config c;
  for (const auto& [section, body] : tree) {
    if (body.empty()) throw ConfigError(section, "key outside of a section");
    for (const auto& [key, value] : body) c.values_[section + "." + key] = trim(value.data());
  }
  return c;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse(text.str());
}

std::optional<std::string> Config::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

void Config::set(const std::string& key, std::string value) { values_[key] = std::move(value); }

std::map<std::string, std::string> Config::take_section(const std::string& section) {
  std::map<std::string, std::string> out;
  const std::string prefix = section + ".";
  for (auto it = values_.begin(); it != values_.end();) {
    if (it->first.compare(0, prefix.size(), prefix) == 0) {
      out[it->first.substr(prefix.size())] = it->second;
      it = values_.erase(it);
    } else {
      ++it;
    }
  }
  return out;
}

std::string Config::canonical() const {
  std::string out;
  for (const auto& [k, v] : values_) out += k + "=" + v + "\n";
  return out;
}

std::string Config::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

std::vector<int> parse_id_list(std::string_view text) {
  std::vector<int> out;
  if (trim(text).empty()) return out;
  for (const std::string& item : split(text, ',')) {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    auto dash = item.find('-', 1);
    if (dash == std::string::npos) {
      if (!parse_int(item, lo)) throw std::invalid_argument("bad id '" + item + "'");
      hi = lo;
    } else if (!parse_int(trim(item.substr(0, dash)), lo) || !parse_int(trim(item.substr(dash + 1)), hi)) {
      throw std::invalid_argument("bad range '" + item + "'");
    }
    if (lo < 0 || hi < lo || hi > INT32_MAX) throw std::invalid_argument("bad range '" + item + "'");
    for (std::int64_t v = lo; v <= hi; ++v) out.push_back(static_cast<int>(v));
  }
  return out;
}

const std::string& ConfigReader::raw(const std::string& key) {
  used_[key] = true;
  auto it = config_.entries().find(key);
  return it->second;
}

std::string ConfigReader::str(const std::string& key, std::optional<std::string> fallback) {
  used_[key] = true;
  if (!has(key)) {
    if (!fallback) throw ConfigError(key, "missing required key");
    return *fallback;
  }
  return raw(key);
}

std::int64_t ConfigReader::integer(const std::string& key, std::optional<std::int64_t> fallback, std::int64_t lo,
                                   std::int64_t hi) {
  used_[key] = true;
  std::int64_t v = 0;
  if (!has(key)) {
    if (!fallback) throw ConfigError(key, "missing required key");
    v = *fallback;
  } else if (!parse_int(raw(key), v)) {
    throw ConfigError(key, "expected an integer, got '" + raw(key) + "'");
  }
  if (v < lo || v > hi)
    throw ConfigError(key, "value " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " +
                               std::to_string(hi) + "]");
  return v;
}

std::uint64_t ConfigReader::unsigned_integer(const std::string& key, std::optional<std::uint64_t> fallback) {
  used_[key] = true;
  if (!has(key)) {
    if (!fallback) throw ConfigError(key, "missing required key");
    return *fallback;
  }
  const std::string& s = raw(key);
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || p != s.data() + s.size())
    throw ConfigError(key, "expected an unsigned 64-bit integer, got '" + s + "'");
  return v;
}

double ConfigReader::real(const std::string& key, std::optional<double> fallback) {
  used_[key] = true;
  if (!has(key)) {
    if (!fallback) throw ConfigError(key, "missing required key");
    return *fallback;
  }
  const std::string& s = raw(key);
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key, "expected a number, got '" + s + "'");
  }
}

Rational ConfigReader::rational(const std::string& key, std::optional<Rational> fallback) {
  used_[key] = true;
  if (!has(key)) {
    if (!fallback) throw ConfigError(key, "missing required key");
    return *fallback;
  }
  try {
    return Rational::parse(raw(key));
  } catch (const std::exception&) {
    throw ConfigError(key, "expected a rational such as 1/3 or 0.25, got '" + raw(key) + "'");
  }
}

bool ConfigReader::boolean(const std::string& key, std::optional<bool> fallback) {
  used_[key] = true;
  if (!has(key)) {
    if (!fallback) throw ConfigError(key, "missing required key");
    return *fallback;
  }
  const std::string& s = raw(key);
  if (s == "true" || s == "yes" || s == "1") return true;
  if (s == "false" || s == "no" || s == "0") return false;
  throw ConfigError(key, "expected true or false, got '" + s + "'");
}

std::vector<int> ConfigReader::int_list(const std::string& key) {
  std::string s = str(key);
  std::vector<int> out;
  if (trim(s).empty()) return out;
  for (const std::string& item : split(s, ',')) {
    std::int64_t v = 0;
    if (!parse_int(item, v) || v < INT32_MIN || v > INT32_MAX)
      throw ConfigError(key, "expected a comma-separated integer list, got '" + s + "'");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

VertexSet ConfigReader::vertex_set(const std::string& key, int n) {
  std::string s = str(key);
  VertexSet out(n);
  try {
    for (int v : parse_id_list(s)) {
      if (v >= n) throw std::invalid_argument("vertex " + std::to_string(v) + " >= n = " + std::to_string(n));
      out.insert(v);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(key, e.what());
  }
  return out;
}

std::vector<VertexSet> ConfigReader::vertex_sets(const std::string& key, int n) {
  std::string s = str(key);
  std::vector<VertexSet> out;
  for (const std::string& part : split(s, '|')) {
    VertexSet set(n);
    try {
      for (int v : parse_id_list(part)) {
        if (v >= n) throw std::invalid_argument("vertex " + std::to_string(v) + " >= n = " + std::to_string(n));
        set.insert(v);
      }
    } catch (const std::invalid_argument& e) {
      throw ConfigError(key, e.what());
    }
    out.push_back(std::move(set));
  }
  return out;
}

std::string ConfigReader::one_of(const std::string& key, const std::vector<std::string>& choices,
                                 std::optional<std::string> fallback) {
  std::string v = str(key, std::move(fallback));
  for (const auto& c : choices)
    if (c == v) return v;
  std::string list;
  for (const auto& c : choices) list += (list.empty() ? "" : ", ") + c;
  throw ConfigError(key, "expected one of {" + list + "}, got '" + v + "'");
}

void ConfigReader::reject_unknown(const std::vector<std::string>& sections) const {
  for (const auto& [key, value] : config_.entries()) {
    std::string section = key.substr(0, key.find('.'));
    bool checked = false;
    for (const auto& s : sections) checked = checked || s == section;
    if (!checked) {
      throw ConfigError(key, "unexpected section [" + section + "] for this kind");
    }
    if (!used_.count(key)) throw ConfigError(key, "unknown key");
  }
}

std::int64_t parse_node_budget(std::string_view text) {
  std::int64_t v = 0;
  if (!parse_int(trim(text), v) || v <= 0)
    throw ConfigError("CFL_NODE_BUDGET", "expected a positive integer, got '" + std::string(text) + "'");
  return v;
}

}  // namespace cfl
