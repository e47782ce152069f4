#pragma once

#include <map>
#include <string>
#include <vector>

namespace rotwave {

// `key = value` lines; '#' starts a comment. Keys are dotted
// (grid.nx, model.dt, ...). Every key must be in the allowed set.
class KeyValueConfig {
 public:
  struct Entry {
    std::string value;
    std::string origin;  // "file.cfg:12" or "--set"
  };

  static KeyValueConfig parse(const std::string& text, const std::string& source,
                              const std::vector<std::string>& allowed);
  static KeyValueConfig load(const std::string& path, const std::vector<std::string>& allowed);

  // key=value override; replaces any value from the file.
  void set(const std::string& assignment, const std::vector<std::string>& allowed);

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  std::string get_string(const std::string& key, const std::string& fallback) const;
  int get_int(const std::string& key, int fallback) const;
  double get_double(const std::string& key, double fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_list(const std::string& key) const;
  std::string origin(const std::string& key) const;

 private:
  std::map<std::string, Entry> entries_;
};

}  // namespace rotwave
