#pragma once

#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "mms.hpp"
#include "reference.hpp"
#include "solve.hpp"

namespace fplate {

struct ReportRow {
  std::string theory;
  std::string bc;
  double alpha = 0.0;
  double lf_frac = 0.0;  // 0 for classical (alpha = 1) rows with no horizon
  int rate_x = 0;
  int rate_y = 0;
  std::string quantity;
  double value = 0.0;
  std::optional<double> reference;
};

struct StudyResult {
  std::string meta;  // echoed configuration, emitted as a comment line
  std::vector<ReportRow> rows;
};

StudyResult run_validation(const StudyConfig& cfg);
StudyResult run_convergence(const StudyConfig& cfg);
StudyResult run_static(const StudyConfig& cfg);
StudyResult run_modal(const StudyConfig& cfg);
// kind overrides cfg.study; throws on unknown kind.
StudyResult run_study(const StudyConfig& cfg, const std::string& kind);

std::string to_csv(const StudyResult& r);
void write_csv(const StudyResult& r, const std::string& path);

// Assembles the first (alpha, lf) cell of the config and writes
// <prefix>.K.mtx and <prefix>.M.mtx in symmetric Matrix Market form.
void export_matrices(const StudyConfig& cfg, const std::string& prefix);

// Assembled-system health checks used by tests and the acceptance suite.
struct InvariantReport {
  double symmetry_rel = 0.0;       // |K - K^T| / |K|, max-abs norms
  double rigid_rel = 0.0;          // |K * rigid translation| / |K|
  int64_t locality_violations = 0; // entries beyond the horizon locality bound
};
InvariantReport check_system_invariants(const AssembledSystem& sys);

// Shared per-case pipeline, also used by the acceptance suite and C API.
class StudyRunner {
 public:
  explicit StudyRunner(const StudyConfig& cfg);

  const StudyConfig& config() const { return cfg_; }
  const Material& material() const { return mat_; }
  const ConstitutiveMatrices& constitutive_matrices() const { return cm_; }
  const InertiaCoeffs& inertia_coeffs() const { return in_; }

  // Elements per side so that element size <= l_f / rate.
  std::pair<int, int> mesh_for(double lf_frac) const;
  LoadSpec udtl_load() const;
  LoadSpec mms_load(double alpha, double lf_frac) const;

  AssembledSystem assemble(double alpha, double lf_frac, int nx, int ny,
                           const LoadSpec& load) const;
  BoundaryConditionSet boundary_conditions(const AssembledSystem& sys) const;
  SolveOptions solve_options(const AssembledSystem& sys) const;
  NondimContext context() const;

 private:
  StudyConfig cfg_;
  Material mat_;
  ConstitutiveMatrices cm_;
  InertiaCoeffs in_;
};

}  // namespace fplate
