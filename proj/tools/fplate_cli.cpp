// Command-line front end; links the public C API only.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "fplate.h"

namespace {

struct CommonOpts {
  std::string config;
  std::string out;
  int threads = 0;
  double tolerance = 0.0;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config, "study configuration file")->required();
  cmd->add_option("--out", o.out, "output path (CSV, or prefix for matrices)");
  cmd->add_option("--threads", o.threads, "concurrent study cells");
  cmd->add_option("--tolerance", o.tolerance,
                  "relative quadrature tolerance for oracle/MMS integrals");
}

int die(const char* what) {
  std::fprintf(stderr, "fplate: %s: %s\n", what, fplate_last_error());
  return 1;
}

int run_kind(const CommonOpts& o, const std::string& kind) {
  fplate_study* s = nullptr;
  if (fplate_study_create_from_file(o.config.c_str(), &s) != FPLATE_OK)
    return die("config");
  if (fplate_study_set_kind(s, kind.c_str()) != FPLATE_OK) {
    fplate_study_destroy(s);
    return die("kind");
  }
  if (!o.out.empty() && fplate_study_set_output(s, o.out.c_str()) != FPLATE_OK) {
    fplate_study_destroy(s);
    return die("out");
  }
  if (o.threads > 0 && fplate_study_set_threads(s, o.threads) != FPLATE_OK) {
    fplate_study_destroy(s);
    return die("threads");
  }
  if (o.tolerance > 0.0 &&
      fplate_study_set_tolerance(s, o.tolerance) != FPLATE_OK) {
    fplate_study_destroy(s);
    return die("tolerance");
  }
  if (fplate_study_run(s) != FPLATE_OK) {
    fplate_study_destroy(s);
    return die("run");
  }
  size_t needed = 0;
  fplate_study_csv(s, nullptr, 0, &needed);
  std::vector<char> buf(needed + 1);
  fplate_study_csv(s, buf.data(), buf.size(), nullptr);
  std::fputs(buf.data(), stdout);
  fplate_study_destroy(s);
  return 0;
}

int run_export(const CommonOpts& o) {
  fplate_study* s = nullptr;
  if (fplate_study_create_from_file(o.config.c_str(), &s) != FPLATE_OK)
    return die("config");
  std::string prefix = o.out.empty() ? "fplate_matrices" : o.out;
  if (fplate_study_export_matrices(s, prefix.c_str()) != FPLATE_OK) {
    fplate_study_destroy(s);
    return die("export");
  }
  std::printf("wrote %s.K.mtx and %s.M.mtx\n", prefix.c_str(), prefix.c_str());
  fplate_study_destroy(s);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  // Deterministic single-threaded BLAS; study-level concurrency is explicit.
  setenv("OPENBLAS_NUM_THREADS", "1", 0);

  CLI::App app{std::string("fplate ") + fplate_version() +
               " - fractional-order nonlocal plate studies"};
  app.require_subcommand(1);

  CommonOpts o_validate, o_converge, o_static, o_modal, o_export;
  auto* c_validate = app.add_subcommand(
      "validate", "manufactured-solution validation (Mindlin, clamped)");
  add_common(c_validate, o_validate);
  auto* c_converge =
      app.add_subcommand("converge", "mesh-rate convergence sweep");
  add_common(c_converge, o_converge);
  auto* c_static =
      app.add_subcommand("static", "static deflection grid under UDTL");
  add_common(c_static, o_static);
  auto* c_modal =
      app.add_subcommand("modal", "free-vibration frequency grid");
  add_common(c_modal, o_modal);
  auto* c_export = app.add_subcommand(
      "export-matrices", "write stiffness/mass in Matrix Market form");
  add_common(c_export, o_export);

  CLI11_PARSE(app, argc, argv);

  if (c_validate->parsed()) return run_kind(o_validate, "validate");
  if (c_converge->parsed()) return run_kind(o_converge, "converge");
  if (c_static->parsed()) return run_kind(o_static, "static");
  if (c_modal->parsed()) return run_kind(o_modal, "modal");
  if (c_export->parsed()) return run_export(o_export);
  return 1;
}
