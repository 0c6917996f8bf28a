#pragma once

#include <string>
#include <vector>

#include "mesh.hpp"

namespace fplate {

// Flat key=value study configuration.  Unknown keys are rejected.
struct StudyConfig {
  std::string study;  // validate | converge | static | modal (may be empty)
  Theory theory = Theory::Mindlin;
  std::string bc = "CCCC";  // CCCC | SSSS
  double length = 1.0;
  double width = 1.0;
  double h = 0.1;
  double e = 30e9;
  double nu = 0.3;
  double rho = 1.0;
  double ks = 5.0 / 6.0;
  std::vector<double> alphas{1.0, 0.9, 0.8, 0.7};
  std::vector<double> lf_fracs{0.2, 0.3, 0.4, 0.5};
  int rate_x = 12;
  int rate_y = 12;
  std::string load = "udtl";  // udtl | mms
  double q = 1.0;
  std::string out;
  int modes = 1;
  double tolerance = 1e-8;
  int threads = 1;

  void validate() const;
};

StudyConfig parse_config_text(const std::string& text);
StudyConfig parse_config_file(const std::string& path);

}  // namespace fplate
