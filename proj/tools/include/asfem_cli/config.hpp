#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace asfem::cli {

/// Flat "key = value" file. '#' starts a comment; lists are comma-separated.
class Config {
public:
  static Config parse(const std::string& text);
  static Config load(const std::string& path);

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::vector<double> get_doubles(const std::string& key, const std::vector<double>& fallback) const;
  std::vector<int> get_ints(const std::string& key, const std::vector<int>& fallback) const;
  std::vector<std::string> get_strings(const std::string& key, const std::vector<std::string>& fallback) const;

  void set(const std::string& key, const std::string& value) { values_[key] = value; }
  /// Throws for keys outside `known`, which usually signal a typo.
  void check_keys(const std::set<std::string>& known) const;

private:
  std::map<std::string, std::string> values_;
};

std::vector<double> parse_doubles(const std::string& list);
std::vector<int> parse_ints(const std::string& list);
double parse_double(const std::string& s);
int parse_int(const std::string& s);

}  // namespace asfem::cli
