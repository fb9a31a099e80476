#include "fisher/manifest.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

#ifndef FISHER_VERSION_STRING
#define FISHER_VERSION_STRING "0.0.0"
#endif

namespace fisher {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

double parse_double(std::string_view text) {
  text = trim(text);
  if (text == "inf" || text == "+inf") return INFINITY;
  if (text == "-inf") return -INFINITY;
  if (text == "nan") return NAN;
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
  return v;
}

std::uint64_t parse_u64(std::string_view text) {
  text = trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    // Allow integral values written in scientific notation, e.g. 1e4.
    const double d = parse_double(text);
    if (d < 0 || d != std::floor(d) || d > 1.8e19) throw std::invalid_argument("not a non-negative integer: '" + std::string(text) + "'");
    return static_cast<std::uint64_t>(d);
  }
  return v;
}

void Manifest::set(std::string key, std::string value) {
  for (auto& [k, v] : entries_) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  entries_.emplace_back(std::move(key), std::move(value));
}

void Manifest::set(std::string key, double value) { set(std::move(key), format_double(value)); }

void Manifest::set(std::string key, std::uint64_t value) { set(std::move(key), std::to_string(value)); }

void Manifest::set(std::string key, const std::vector<double>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ',';
    s += format_double(values[i]);
  }
  set(std::move(key), std::move(s));
}

void Manifest::set(std::string key, const std::vector<std::uint64_t>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(values[i]);
  }
  set(std::move(key), std::move(s));
}

bool Manifest::contains(std::string_view key) const { return find(key).has_value(); }

std::optional<std::string> Manifest::find(std::string_view key) const {
  for (const auto& [k, v] : entries_)
    if (k == key) return v;
  return std::nullopt;
}

const std::string& Manifest::get(std::string_view key) const {
  for (const auto& [k, v] : entries_)
    if (k == key) return v;
  throw std::out_of_range("manifest has no key '" + std::string(key) + "'");
}

double Manifest::get_double(std::string_view key) const { return parse_double(get(key)); }

std::uint64_t Manifest::get_u64(std::string_view key) const { return parse_u64(get(key)); }

std::vector<double> Manifest::get_doubles(std::string_view key) const {
  std::vector<double> out;
  std::string_view rest = get(key);
  while (!trim(rest).empty()) {
    const auto comma = rest.find(',');
    out.push_back(parse_double(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

std::string Manifest::to_string() const {
  std::string out;
  for (const auto& [k, v] : entries_) out += k + " = " + v + "\n";
  return out;
}

Manifest Manifest::parse(std::string_view text) {
  Manifest m;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("manifest line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    std::string key(trim(line.substr(0, eq)));
    if (key.empty()) throw std::invalid_argument("manifest line " + std::to_string(line_no) + ": empty key");
    if (m.contains(key)) throw std::invalid_argument("manifest line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    m.entries_.emplace_back(std::move(key), std::string(trim(line.substr(eq + 1))));
  }
  return m;
}

void Manifest::write(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write manifest '" + path.string() + "'");
  out << to_string();
  if (!out) throw std::runtime_error("failed writing manifest '" + path.string() + "'");
}

Manifest Manifest::read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open manifest '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string tool_version() { return FISHER_VERSION_STRING; }

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace fisher
