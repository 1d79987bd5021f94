#include <cmath>
#include <fstream>
#include <sstream>

#include "hyperwave/harness.hpp"

namespace hyperwave::harness {

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"evolve", "spectrum", "resolvent-check", "strichartz", "yangmills",
                                                 "crosscheck"};
  return names;
}

namespace {

int line_at(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + offset, '\n'));
}

}  // namespace

ConfigReader::ConfigReader(const Json& node, std::string path, const std::string* text)
    : node_(node), path_(std::move(path)), text_(text) {
  if (!node_.is_object()) {
    std::string what = path_.empty() ? "configuration root" : "'" + path_ + "'";
    fail(ErrorKind::config, what + " must be an object");
  }
}

int ConfigReader::line_of(const std::string& key) const {
  if (!text_) return 0;
  const std::string token = "\"" + key + "\"";
  std::size_t pos = 0;
  while ((pos = text_->find(token, pos)) != std::string::npos) {
    std::size_t k = pos + token.size();
    while (k < text_->size() && std::isspace(static_cast<unsigned char>((*text_)[k]))) ++k;
    if (k < text_->size() && (*text_)[k] == ':') return line_at(*text_, pos);
    pos += token.size();
  }
  return 0;
}

void ConfigReader::error(const std::string& key, const std::string& msg) const {
  std::string full = path_.empty() ? key : path_ + "." + key;
  int line = line_of(key);
  std::string where = line > 0 ? "line " + std::to_string(line) + ": " : "";
  fail(ErrorKind::config, where + "'" + full + "' " + msg);
}

const Json& ConfigReader::get(const std::string& key) {
  used_.insert(key);
  return node_.at(key);
}

double ConfigReader::number(const std::string& key, std::optional<double> dflt) {
  if (!has(key)) {
    if (!dflt) error(key, "is required");
    resolved_[key] = *dflt;
    return *dflt;
  }
  const Json& v = get(key);
  if (!v.is_number()) error(key, "must be a number");
  double x = v.get<double>();
  resolved_[key] = x;
  return x;
}

double ConfigReader::extended(const std::string& key, std::optional<double> dflt) {
  if (has(key) && node_.at(key).is_string()) {
    std::string s = get(key).get<std::string>();
    if (s != "inf" && s != "-inf") error(key, "must be a number or \"inf\"");
    resolved_[key] = s;
    return s == "inf" ? kInf : -kInf;
  }
  return number(key, dflt);
}

int ConfigReader::integer(const std::string& key, std::optional<int> dflt) {
  if (!has(key)) {
    if (!dflt) error(key, "is required");
    resolved_[key] = *dflt;
    return *dflt;
  }
  const Json& v = get(key);
  if (!v.is_number_integer()) error(key, "must be an integer");
  int x = v.get<int>();
  resolved_[key] = x;
  return x;
}

bool ConfigReader::boolean(const std::string& key, std::optional<bool> dflt) {
  if (!has(key)) {
    if (!dflt) error(key, "is required");
    resolved_[key] = *dflt;
    return *dflt;
  }
  const Json& v = get(key);
  if (!v.is_boolean()) error(key, "must be true or false");
  resolved_[key] = v.get<bool>();
  return v.get<bool>();
}

std::string ConfigReader::string(const std::string& key, std::optional<std::string> dflt) {
  if (!has(key)) {
    if (!dflt) error(key, "is required");
    resolved_[key] = *dflt;
    return *dflt;
  }
  const Json& v = get(key);
  if (!v.is_string()) error(key, "must be a string");
  resolved_[key] = v.get<std::string>();
  return v.get<std::string>();
}

std::vector<double> ConfigReader::numbers(const std::string& key, std::optional<std::vector<double>> dflt) {
  if (!has(key)) {
    if (!dflt) error(key, "is required");
    resolved_[key] = *dflt;
    return *dflt;
  }
  const Json& v = get(key);
  if (!v.is_array()) error(key, "must be an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) error(key, "must be an array of numbers");
    out.push_back(e.get<double>());
  }
  resolved_[key] = out;
  return out;
}

const Json& ConfigReader::raw(const std::string& key) {
  const Json& v = get(key);
  resolved_[key] = v;
  return v;
}

ConfigReader& ConfigReader::object(const std::string& key) {
  for (auto& [k, child] : children_)
    if (k == key) return *child;
  Json sub = Json::object();
  if (has(key)) {
    sub = get(key);
    if (!sub.is_object()) error(key, "must be an object");
  } else {
    used_.insert(key);
  }
  children_.emplace_back(key, std::make_unique<ConfigReader>(sub, path_.empty() ? key : path_ + "." + key, text_));
  return *children_.back().second;
}

void ConfigReader::finish() {
  for (auto it = node_.begin(); it != node_.end(); ++it)
    if (!used_.count(it.key())) error(it.key(), "is not a recognized key");
  for (auto& [k, child] : children_) child->finish();
}

Json ConfigReader::resolved() const {
  Json out = resolved_;
  for (const auto& [k, child] : children_) out[k] = child->resolved();
  return out;
}

RunConfig load_config(const std::string& command, const std::string& path, std::optional<std::uint64_t> seed,
                      int threads) {
  if (std::find(command_names().begin(), command_names().end(), command) == command_names().end())
    fail(ErrorKind::config, "unknown command '" + command + "'");
  require(threads >= 1, ErrorKind::config, "--threads must be >= 1");
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorKind::config, "cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  RunConfig cfg;
  cfg.command = command;
  cfg.path = path;
  cfg.text = buf.str();
  cfg.threads = threads;
  try {
    cfg.root = Json::parse(cfg.text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::config, "line " + std::to_string(line_at(cfg.text, e.byte > 0 ? e.byte - 1 : 0)) +
                                ": syntax error in '" + path + "'");
  }
  require(cfg.root.is_object(), ErrorKind::config, "line 1: configuration root must be an object");
  if (cfg.root.contains("seed")) {
    const Json& s = cfg.root.at("seed");
    require(s.is_number_unsigned() || (s.is_number_integer() && s.get<long long>() >= 0), ErrorKind::config,
            "'seed' must be a nonnegative integer");
    cfg.seed = s.get<std::uint64_t>();
  }
  if (seed) cfg.seed = *seed;
  return cfg;
}

}  // namespace hyperwave::harness
