#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fplate {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::vector<double> parse_list(const std::string& v, const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    size_t pos = 0;
    double d = std::stod(item, &pos);
    if (pos != item.size())
      throw std::invalid_argument("config: bad number in '" + key + "'");
    out.push_back(d);
  }
  if (out.empty()) throw std::invalid_argument("config: empty list for '" + key + "'");
  return out;
}

double parse_num(const std::string& v, const std::string& key) {
  size_t pos = 0;
  double d = std::stod(v, &pos);
  if (pos != v.size())
    throw std::invalid_argument("config: bad number for '" + key + "'");
  return d;
}

}  // namespace

void StudyConfig::validate() const {
  if (!(length > 0.0) || !(width > 0.0) || !(h > 0.0))
    throw std::invalid_argument("config: geometry must be positive");
  if (!(e > 0.0) || !(nu >= 0.0 && nu < 0.5) || !(rho > 0.0))
    throw std::invalid_argument("config: bad material constants");
  if (!(ks > 0.0 && ks <= 1.0))
    throw std::invalid_argument("config: ks must be in (0,1]");
  for (double a : alphas)
    if (!(a > 0.0 && a <= 1.0))
      throw std::invalid_argument("config: alpha values must be in (0,1]");
  for (double f : lf_fracs)
    if (!(f > 0.0 && f <= 0.5))
      throw std::invalid_argument("config: lf fractions must be in (0,0.5]");
  if (rate_x < 4 || rate_y < 4)
    throw std::invalid_argument("config: dynamic rate must be >= 4");
  if (bc != "CCCC" && bc != "SSSS")
    throw std::invalid_argument("config: bc must be CCCC or SSSS");
  if (load != "udtl" && load != "mms")
    throw std::invalid_argument("config: load must be udtl or mms");
  if (!study.empty() && study != "validate" && study != "converge" &&
      study != "static" && study != "modal")
    throw std::invalid_argument("config: unknown study kind '" + study + "'");
  if (modes < 1 || modes > 64)
    throw std::invalid_argument("config: modes must be in 1..64");
  if (!(tolerance > 0.0 && tolerance <= 1e-2))
    throw std::invalid_argument("config: tolerance must be in (0, 1e-2]");
  if (threads < 1 || threads > 256)
    throw std::invalid_argument("config: threads must be in 1..256");
}

StudyConfig parse_config_text(const std::string& text) {
  StudyConfig cfg;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    std::string key = lower(trim(s.substr(0, eq)));
    std::string val = trim(s.substr(eq + 1));
    if (key == "study") cfg.study = lower(val);
    else if (key == "theory") {
      std::string t = lower(val);
      if (t == "mindlin") cfg.theory = Theory::Mindlin;
      else if (t == "kirchoff" || t == "kirchhoff") cfg.theory = Theory::Kirchoff;
      else throw std::invalid_argument("config: unknown theory '" + val + "'");
    } else if (key == "bc") cfg.bc = val;
    else if (key == "l") cfg.length = parse_num(val, key);
    else if (key == "b") cfg.width = parse_num(val, key);
    else if (key == "h") cfg.h = parse_num(val, key);
    else if (key == "e") cfg.e = parse_num(val, key);
    else if (key == "nu") cfg.nu = parse_num(val, key);
    else if (key == "rho") cfg.rho = parse_num(val, key);
    else if (key == "ks") cfg.ks = parse_num(val, key);
    else if (key == "alpha") cfg.alphas = parse_list(val, key);
    else if (key == "lf") cfg.lf_fracs = parse_list(val, key);
    else if (key == "rate_x") cfg.rate_x = static_cast<int>(parse_num(val, key));
    else if (key == "rate_y") cfg.rate_y = static_cast<int>(parse_num(val, key));
    else if (key == "load") cfg.load = lower(val);
    else if (key == "q") cfg.q = parse_num(val, key);
    else if (key == "out") cfg.out = val;
    else if (key == "modes") cfg.modes = static_cast<int>(parse_num(val, key));
    else if (key == "tolerance") cfg.tolerance = parse_num(val, key);
    else if (key == "threads") cfg.threads = static_cast<int>(parse_num(val, key));
    else
      throw std::invalid_argument("config: unknown key '" + key + "'");
  }
  cfg.validate();
  return cfg;
}

StudyConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

}  // namespace fplate
