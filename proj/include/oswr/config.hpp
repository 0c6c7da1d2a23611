#ifndef OSWR_CONFIG_HPP
#define OSWR_CONFIG_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "oswr/problem.hpp"

namespace oswr {

/// Sectioned key = value text file ([section] headers, # comments).
class ConfigFile {
 public:
  ConfigFile() = default;
  static ConfigFile parse(const std::string& text);
  static ConfigFile load(const std::string& path);
  std::string serialize() const;
  void save(const std::string& path) const;

  bool has(const std::string& section, const std::string& key) const;
  std::string get(const std::string& section, const std::string& key,
                  const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key, double fallback) const;
  int get_int(const std::string& section, const std::string& key, int fallback) const;
  bool get_bool(const std::string& section, const std::string& key, bool fallback) const;
  std::vector<double> get_list(const std::string& section, const std::string& key) const;

  void set(const std::string& section, const std::string& key, const std::string& value);
  void set_double(const std::string& section, const std::string& key, double value);

  /// overlay all entries of other on top of this one
  void merge(const ConfigFile& other);

 private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

/// Problem selection carried by the [problem] section: either one of the
/// built-in test cases or a custom uniform-coefficient problem.
ProblemSpec problem_from_config(const ConfigFile& cfg);
ConfigFile problem_to_config(const ProblemSpec& spec);

}  // namespace oswr

#endif
