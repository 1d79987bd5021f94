#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "hyperwave/core_types.hpp"
#include "hyperwave/errors.hpp"

namespace hyperwave::harness {

inline constexpr const char* kVersion = "1.0.0";

using Json = nlohmann::ordered_json;

const std::vector<std::string>& command_names();

/// Typed access to one JSON object. Every read is echoed into `resolved`, defaults
/// included; finish() rejects keys that were never read.
class ConfigReader {
 public:
  ConfigReader(const Json& node, std::string path, const std::string* text);

  bool has(const std::string& key) const { return node_.contains(key); }
  /// Sub-node without marking it as read.
  const Json& peek(const std::string& key) const { return node_.at(key); }
  double number(const std::string& key, std::optional<double> dflt = std::nullopt);
  /// Accepts numbers and the strings "inf" / "-inf".
  double extended(const std::string& key, std::optional<double> dflt = std::nullopt);
  int integer(const std::string& key, std::optional<int> dflt = std::nullopt);
  bool boolean(const std::string& key, std::optional<bool> dflt = std::nullopt);
  std::string string(const std::string& key, std::optional<std::string> dflt = std::nullopt);
  std::vector<double> numbers(const std::string& key, std::optional<std::vector<double>> dflt = std::nullopt);
  /// Raw sub-node, echoed verbatim.
  const Json& raw(const std::string& key);
  /// Nested object; missing keys give an empty object whose reads produce defaults.
  ConfigReader& object(const std::string& key);

  /// Records a value computed from a default.
  void echo(const std::string& key, Json v) {
    used_.insert(key);
    resolved_[key] = std::move(v);
  }

  void finish();
  Json resolved() const;
  [[noreturn]] void error(const std::string& key, const std::string& msg) const;
  int line_of(const std::string& key) const;

 private:
  const Json& get(const std::string& key);
  Json node_;
  std::string path_;
  const std::string* text_;
  Json resolved_ = Json::object();
  std::set<std::string> used_;
  std::vector<std::pair<std::string, std::unique_ptr<ConfigReader>>> children_;
};

struct RunConfig {
  std::string command;
  std::string path;
  std::string text;
  Json root;
  std::uint64_t seed = 1;
  int threads = 1;
};

/// Parses the file; syntax errors become config errors carrying the line number.
RunConfig load_config(const std::string& command, const std::string& path, std::optional<std::uint64_t> seed,
                      int threads);

struct RunOutput {
  Json result = Json::object();
  Json resolved = Json::object();
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

RunOutput execute(const RunConfig& cfg);

/// result.json, series.csv and manifest.json in `out_dir`.
void write_outputs(const RunConfig& cfg, const RunOutput& out, const std::filesystem::path& out_dir);

std::string format_csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows);

/// 2 configuration, 3 numerical guard, 4 internal.
int exit_code(ErrorKind kind);

/// Full run with error reporting on stderr; returns the process exit status.
int run(const std::string& command, const std::string& config_path, const std::string& out_dir,
        std::optional<std::uint64_t> seed, int threads);

}  // namespace hyperwave::harness
