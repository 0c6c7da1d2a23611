#include "oswr/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace oswr {

namespace {
std::string trim(const std::string& s) {
  const size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}
}  // namespace

ConfigFile ConfigFile::parse(const std::string& text) {
  ConfigFile cfg;
  std::istringstream in(text);
  std::string line, section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::invalid_argument("config line " + std::to_string(line_no) + ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key = value");
    cfg.sections_[section][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return cfg;
}

ConfigFile ConfigFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

std::string ConfigFile::serialize() const {
  std::ostringstream out;
  for (const auto& [section, entries] : sections_) {
    if (!section.empty()) out << '[' << section << "]\n";
    for (const auto& [key, value] : entries) out << key << " = " << value << '\n';
    out << '\n';
  }
  return out.str();
}

void ConfigFile::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write config file: " + path);
  out << serialize();
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
  const auto s = sections_.find(section);
  return s != sections_.end() && s->second.count(key) > 0;
}

std::string ConfigFile::get(const std::string& section, const std::string& key,
                            const std::string& fallback) const {
  const auto s = sections_.find(section);
  if (s == sections_.end()) return fallback;
  const auto k = s->second.find(key);
  return k == s->second.end() ? fallback : k->second;
}

double ConfigFile::get_double(const std::string& section, const std::string& key,
                              double fallback) const {
  if (!has(section, key)) return fallback;
  return std::stod(get(section, key, ""));
}

int ConfigFile::get_int(const std::string& section, const std::string& key, int fallback) const {
  if (!has(section, key)) return fallback;
  return std::stoi(get(section, key, ""));
}

bool ConfigFile::get_bool(const std::string& section, const std::string& key, bool fallback) const {
  if (!has(section, key)) return fallback;
  const std::string v = get(section, key, "");
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw std::invalid_argument("config: bad boolean value '" + v + "' for " + section + "." + key);
}

std::vector<double> ConfigFile::get_list(const std::string& section, const std::string& key) const {
  std::vector<double> out;
  std::istringstream in(get(section, key, ""));
  double v;
  while (in >> v) out.push_back(v);
  return out;
}

void ConfigFile::set(const std::string& section, const std::string& key, const std::string& value) {
  sections_[section][key] = value;
}

void ConfigFile::set_double(const std::string& section, const std::string& key, double value) {
  std::ostringstream out;
  out.precision(17);
  out << value;
  set(section, key, out.str());
}

void ConfigFile::merge(const ConfigFile& other) {
  for (const auto& [section, entries] : other.sections_)
    for (const auto& [key, value] : entries) sections_[section][key] = value;
}

ProblemSpec problem_from_config(const ConfigFile& cfg) {
  const int testcase = cfg.get_int("problem", "testcase", 0);
  ProblemSpec spec;
  if (testcase == 1) {
    spec = testcase1().spec;
  } else if (testcase == 2) {
    spec = testcase2(regime_from_string(cfg.get("problem", "regime", "c")),
                     cfg.get_bool("problem", "error_equation", false));
  } else {
    const std::vector<double> dom = cfg.get_list("problem", "domain");
    if (dom.size() == 4) {
      spec.x_min = dom[0];
      spec.x_max = dom[1];
      spec.y_min = dom[2];
      spec.y_max = dom[3];
    }
    spec.interface_x = cfg.get_double("problem", "interface_x", 0.5 * (spec.x_min + spec.x_max));
    for (int i = 0; i < 2; ++i) {
      const std::string pre = "sub" + std::to_string(i + 1) + "_";
      const double omega = cfg.get_double("problem", pre + "omega", 1.0);
      const double d = cfg.get_double("problem", pre + "d", 1.0);
      std::vector<double> u = cfg.get_list("problem", pre + "u");
      if (u.size() != 2) u = {0.0, 0.0};
      SubdomainCoefficients& c = spec.sub[i];
      c.porosity = [omega](double, double) { return omega; };
      c.d_xx = [d](double, double) { return d; };
      c.d_yy = [d](double, double) { return d; };
      const Vec2 uv{u[0], u[1]};
      c.velocity = [uv](double, double) { return uv; };
      c.constant_d = d;
      c.constant_velocity = uv;
    }
    spec.source = [](double, double, double) { return 0.0; };
    spec.initial = [](double, double) { return 0.0; };
    spec.name = "custom";
  }
  spec.final_time = cfg.get_double("problem", "T", spec.final_time);
  if (cfg.has("problem", "interface_x"))
    spec.interface_x = cfg.get_double("problem", "interface_x", spec.interface_x);
  spec.validate();
  return spec;
}

ConfigFile problem_to_config(const ProblemSpec& spec) {
  ConfigFile cfg;
  if (spec.name == "testcase1") {
    cfg.set("problem", "testcase", "1");
  } else if (spec.name.rfind("testcase2", 0) == 0) {
    cfg.set("problem", "testcase", "2");
  } else {
    cfg.set("problem", "testcase", "0");
    std::ostringstream dom;
    dom.precision(17);
    dom << spec.x_min << ' ' << spec.x_max << ' ' << spec.y_min << ' ' << spec.y_max;
    cfg.set("problem", "domain", dom.str());
    for (int i = 0; i < 2; ++i) {
      const std::string pre = "sub" + std::to_string(i + 1) + "_";
      if (spec.sub[i].constant_d) cfg.set_double("problem", pre + "d", *spec.sub[i].constant_d);
      const double cx = i == 0 ? 0.5 * (spec.x_min + spec.interface_x)
                               : 0.5 * (spec.interface_x + spec.x_max);
      cfg.set_double("problem", pre + "omega", spec.sub[i].porosity(cx, 0.5 * (spec.y_min + spec.y_max)));
      if (spec.sub[i].constant_velocity) {
        std::ostringstream u;
        u.precision(17);
        u << spec.sub[i].constant_velocity->x << ' ' << spec.sub[i].constant_velocity->y;
        cfg.set("problem", pre + "u", u.str());
      }
    }
  }
  cfg.set_double("problem", "T", spec.final_time);
  cfg.set_double("problem", "interface_x", spec.interface_x);
  return cfg;
}

}  // namespace oswr
