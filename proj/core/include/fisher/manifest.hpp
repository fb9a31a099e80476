#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fisher {

/// Flat, ordered key-value record describing a run.
///
/// File format: one `key = value` per line; blank lines and lines starting
/// with `#` are ignored; keys are unique; values run to the end of the line
/// with surrounding whitespace trimmed. Lists are comma-separated. Every key
/// except `timestamp` is part of the replay contract.
class Manifest {
 public:
  void set(std::string key, std::string value);
  void set(std::string key, double value);
  void set(std::string key, std::uint64_t value);
  void set_size(std::string key, std::size_t value) { set(std::move(key), static_cast<std::uint64_t>(value)); }
  void set(std::string key, const std::vector<double>& values);
  void set(std::string key, const std::vector<std::uint64_t>& values);

  bool contains(std::string_view key) const;
  const std::string& get(std::string_view key) const;
  std::optional<std::string> find(std::string_view key) const;
  double get_double(std::string_view key) const;
  std::uint64_t get_u64(std::string_view key) const;
  std::size_t get_size(std::string_view key) const { return static_cast<std::size_t>(get_u64(key)); }
  std::vector<double> get_doubles(std::string_view key) const;

  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

  std::string to_string() const;
  static Manifest parse(std::string_view text);

  void write(const std::filesystem::path& path) const;
  static Manifest read(const std::filesystem::path& path);

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

/// Round-trippable decimal rendering (17 significant digits).
std::string format_double(double value);

/// Strict number parsing (accepts scientific notation); throws std::invalid_argument.
double parse_double(std::string_view text);
std::uint64_t parse_u64(std::string_view text);

std::string tool_version();

/// UTC ISO-8601 time of the call.
std::string utc_timestamp();

}  // namespace fisher
