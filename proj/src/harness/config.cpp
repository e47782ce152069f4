#include "rotwave/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "rotwave/error.hpp"

namespace rotwave {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

void check_key(const std::string& key, const std::string& origin,
               const std::vector<std::string>& allowed) {
  if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
    throw ConfigError(origin + ": unknown key '" + key + "'");
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(const std::string& text, const std::string& source,
                                     const std::vector<std::string>& allowed) {
  KeyValueConfig cfg;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string origin = source + ":" + std::to_string(number);
    for (std::size_t p = line.find('#'); p != std::string::npos; p = line.find('#', p + 1)) {
      if (p == 0 || line[p - 1] == ' ' || line[p - 1] == '\t') {
        line.erase(p);
        break;
      }
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(origin + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(origin + ": missing key");
    check_key(key, origin, allowed);
    if (cfg.entries_.count(key))
      throw ConfigError(origin + ": duplicate key '" + key + "' (first set at " +
                        cfg.entries_[key].origin + ")");
    cfg.entries_[key] = Entry{value, origin};
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::string& path,
                                    const std::vector<std::string>& allowed) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse(text.str(), path, allowed);
}

void KeyValueConfig::set(const std::string& assignment, const std::vector<std::string>& allowed) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw ConfigError("--set: expected key=value, got '" + assignment + "'");
  const std::string key = trim(assignment.substr(0, eq));
  check_key(key, "--set", allowed);
  entries_[key] = Entry{trim(assignment.substr(eq + 1)), "--set " + key};
}

std::string KeyValueConfig::origin(const std::string& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? "default" : it->second.origin;
}

std::string KeyValueConfig::get_string(const std::string& key, const std::string& fallback) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? fallback : it->second.value;
}

namespace {

template <class T>
T parse_number(const std::string& text, const std::string& key, const std::string& origin,
               const char* what) {
  T v{};
  const char* b = text.data();
  const char* e = b + text.size();
  auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || p != e || text.empty())
    throw ConfigError(origin + ": key '" + key + "' expects " + what + ", got '" + text + "'");
  return v;
}

}  // namespace

int KeyValueConfig::get_int(const std::string& key, int fallback) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  return parse_number<int>(it->second.value, key, it->second.origin, "an integer");
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  return parse_number<double>(it->second.value, key, it->second.origin, "a number");
}

bool KeyValueConfig::get_bool(const std::string& key, bool fallback) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  const std::string& v = it->second.value;
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(it->second.origin + ": key '" + key + "' expects true or false, got '" + v +
                    "'");
}

std::vector<double> KeyValueConfig::get_list(const std::string& key) const {
  std::vector<double> out;
  auto it = entries_.find(key);
  if (it == entries_.end()) return out;
  std::stringstream ss(it->second.value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(parse_number<double>(item, key, it->second.origin, "a list of numbers"));
  }
  return out;
}

}  // namespace rotwave
