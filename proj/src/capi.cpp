#include "fplate.h"

#include <cstring>
#include <sstream>
#include <stdexcept>
#include <string>

#include "config.hpp"
#include "study.hpp"

using namespace fplate;

struct fplate_study {
  StudyConfig cfg;
  StudyResult result;
  std::vector<std::string> row_lines;
  std::string csv;
  bool ran = false;
};

namespace {

thread_local std::string g_last_error;

fplate_status fail(fplate_status code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

template <typename Fn>
fplate_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    return fail(FPLATE_ERR_ARGUMENT, e.what());
  } catch (const std::domain_error& e) {
    return fail(FPLATE_ERR_ARGUMENT, e.what());
  } catch (const std::runtime_error& e) {
    return fail(FPLATE_ERR_NUMERIC, e.what());
  } catch (const std::exception& e) {
    return fail(FPLATE_ERR_INTERNAL, e.what());
  }
}

}  // namespace

extern "C" {

const char* fplate_version(void) { return "0.1.0"; }

const char* fplate_last_error(void) { return g_last_error.c_str(); }

fplate_status fplate_study_create_from_file(const char* path,
                                            fplate_study** out) {
  if (!path || !out) return fail(FPLATE_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&]() {
    auto s = new fplate_study();
    try {
      s->cfg = parse_config_file(path);
    } catch (...) {
      delete s;
      throw;
    }
    *out = s;
    return FPLATE_OK;
  });
}

fplate_status fplate_study_create_from_string(const char* text,
                                              fplate_study** out) {
  if (!text || !out) return fail(FPLATE_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&]() {
    auto s = new fplate_study();
    try {
      s->cfg = parse_config_text(text);
    } catch (...) {
      delete s;
      throw;
    }
    *out = s;
    return FPLATE_OK;
  });
}

void fplate_study_destroy(fplate_study* s) { delete s; }

fplate_status fplate_study_set_kind(fplate_study* s, const char* kind) {
  if (!s || !kind) return fail(FPLATE_ERR_ARGUMENT, "null argument");
  return guarded([&]() {
    StudyConfig c = s->cfg;
    c.study = kind;
    c.validate();
    s->cfg = c;
    return FPLATE_OK;
  });
}

fplate_status fplate_study_set_output(fplate_study* s, const char* path) {
  if (!s || !path) return fail(FPLATE_ERR_ARGUMENT, "null argument");
  s->cfg.out = path;
  return FPLATE_OK;
}

fplate_status fplate_study_set_threads(fplate_study* s, int threads) {
  if (!s) return fail(FPLATE_ERR_ARGUMENT, "null argument");
  return guarded([&]() {
    StudyConfig c = s->cfg;
    c.threads = threads;
    c.validate();
    s->cfg = c;
    return FPLATE_OK;
  });
}

fplate_status fplate_study_set_tolerance(fplate_study* s, double rel_tol) {
  if (!s) return fail(FPLATE_ERR_ARGUMENT, "null argument");
  return guarded([&]() {
    StudyConfig c = s->cfg;
    c.tolerance = rel_tol;
    c.validate();
    s->cfg = c;
    return FPLATE_OK;
  });
}

fplate_status fplate_study_run(fplate_study* s) {
  if (!s) return fail(FPLATE_ERR_ARGUMENT, "null study");
  if (s->cfg.study.empty())
    return fail(FPLATE_ERR_ARGUMENT, "study kind not set");
  return guarded([&]() {
    s->result = run_study(s->cfg, s->cfg.study);
    s->csv = to_csv(s->result);
    s->row_lines.clear();
    std::istringstream is(s->csv);
    std::string line;
    while (std::getline(is, line))
      if (!line.empty() && line[0] != '#' && line.rfind("theory,", 0) != 0)
        s->row_lines.push_back(line);
    s->ran = true;
    if (!s->cfg.out.empty()) write_csv(s->result, s->cfg.out);
    return FPLATE_OK;
  });
}

fplate_status fplate_study_row_count(const fplate_study* s, size_t* count) {
  if (!s || !count) return fail(FPLATE_ERR_ARGUMENT, "null argument");
  if (!s->ran) return fail(FPLATE_ERR_ARGUMENT, "study has not run");
  *count = s->row_lines.size();
  return FPLATE_OK;
}

fplate_status fplate_study_row(const fplate_study* s, size_t index, char* buf,
                               size_t buf_size) {
  if (!s || !buf) return fail(FPLATE_ERR_ARGUMENT, "null argument");
  if (!s->ran) return fail(FPLATE_ERR_ARGUMENT, "study has not run");
  if (index >= s->row_lines.size())
    return fail(FPLATE_ERR_ARGUMENT, "row index out of range");
  const std::string& line = s->row_lines[index];
  if (buf_size <= line.size())
    return fail(FPLATE_ERR_ARGUMENT, "buffer too small");
  std::memcpy(buf, line.c_str(), line.size() + 1);
  return FPLATE_OK;
}

fplate_status fplate_study_csv(const fplate_study* s, char* buf,
                               size_t buf_size, size_t* needed) {
  if (!s) return fail(FPLATE_ERR_ARGUMENT, "null study");
  if (!s->ran) return fail(FPLATE_ERR_ARGUMENT, "study has not run");
  if (needed) *needed = s->csv.size();
  if (!buf) return FPLATE_OK;
  if (buf_size <= s->csv.size())
    return fail(FPLATE_ERR_ARGUMENT, "buffer too small");
  std::memcpy(buf, s->csv.c_str(), s->csv.size() + 1);
  return FPLATE_OK;
}

fplate_status fplate_study_export_matrices(fplate_study* s,
                                           const char* prefix) {
  if (!s || !prefix) return fail(FPLATE_ERR_ARGUMENT, "null argument");
  return guarded([&]() {
    export_matrices(s->cfg, prefix);
    return FPLATE_OK;
  });
}

}  // extern "C"
