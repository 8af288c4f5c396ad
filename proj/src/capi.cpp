#include "crystalkit/crystalkit.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "crystalkit/report.hpp"

using namespace crystalkit;

struct ck_module {
  ModuleSpec spec;
};
struct ck_system {
  ASSystem sys;
};
struct ck_connection {
  ConnectionFile file;
};
struct ck_report {
  ReportBundle bundle;
};

namespace {

thread_local std::string last_error;

template <typename F>
ck_status guard(F&& f) {
  last_error.clear();
  try {
    f();
    return CK_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return static_cast<ck_status>(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  }
  return CK_INTERNAL_ERROR;
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void need(const void* p, const char* what) {
  if (!p) fail(ErrorCode::UsageError, std::string("null ") + what);
}

std::optional<unsigned> opt(unsigned v) {
  return v ? std::optional<unsigned>(v) : std::nullopt;
}

}  // namespace

extern "C" {

const char* ck_version(void) { return "0.1.0"; }

const char* ck_status_name(ck_status s) {
  if (s == CK_OK) return "Ok";
  if (s == CK_INTERNAL_ERROR) return "InternalError";
  if (s >= CK_NOT_PRIME && s <= CK_USAGE_ERROR) return error_name(static_cast<ErrorCode>(s));
  return "Unknown";
}

const char* ck_last_error(void) { return last_error.c_str(); }

void ck_string_free(char* s) { std::free(s); }

ck_status ck_module_parse(const char* json, ck_module** out) {
  return guard([&] {
    need(json, "input");
    need(out, "output");
    *out = new ck_module{parse_module_spec(json)};
  });
}

ck_status ck_module_to_json(const ck_module* m, char** out) {
  return guard([&] {
    need(m, "module");
    need(out, "output");
    *out = dup(module_spec_to_json(m->spec));
  });
}

void ck_module_free(ck_module* m) { delete m; }

ck_status ck_system_parse(const char* json, ck_system** out) {
  return guard([&] {
    need(json, "input");
    need(out, "output");
    *out = new ck_system{parse_system(json)};
  });
}

ck_status ck_system_to_json(const ck_system* s, char** out) {
  return guard([&] {
    need(s, "system");
    need(out, "output");
    *out = dup(system_to_json(s->sys));
  });
}

ck_status ck_system_geometric_count(const ck_system* s, unsigned* m) {
  return guard([&] {
    need(s, "system");
    need(m, "output");
    *m = geometric_count(s->sys).m;
  });
}

void ck_system_free(ck_system* s) { delete s; }

ck_status ck_connection_parse(const char* json, ck_connection** out) {
  return guard([&] {
    need(json, "input");
    need(out, "output");
    *out = new ck_connection{parse_connection(json)};
  });
}

ck_status ck_connection_to_json(const ck_connection* c, char** out) {
  return guard([&] {
    need(c, "connection");
    need(out, "output");
    *out = dup(connection_to_json(c->file));
  });
}

void ck_connection_free(ck_connection* c) { delete c; }

ck_status ck_run_newton(const ck_module* m, ck_report** out) {
  return guard([&] {
    need(m, "module");
    need(out, "output");
    *out = new ck_report{run_newton(m->spec)};
  });
}

ck_status ck_run_valuations(const ck_module* m, unsigned p, ck_report** out) {
  return guard([&] {
    need(m, "module");
    need(out, "output");
    *out = new ck_report{run_valuations(m->spec, opt(p))};
  });
}

ck_status ck_run_example43(unsigned p, unsigned q0, unsigned q1, unsigned n, unsigned m,
                           ck_report** out) {
  return guard([&] {
    need(out, "output");
    *out = new ck_report{run_example43(p, q0, q1, n, m)};
  });
}

ck_status ck_run_embed(const ck_module* m, unsigned p, unsigned precision, unsigned r,
                       ck_report** out) {
  return guard([&] {
    need(m, "module");
    need(out, "output");
    *out = new ck_report{run_embed(m->spec, opt(p), opt(precision), opt(r))};
  });
}

ck_status ck_run_solve(const ck_system* s, unsigned ext, ck_report** out) {
  return guard([&] {
    need(s, "system");
    need(out, "output");
    *out = new ck_report{run_solve(s->sys, ext)};
  });
}

ck_status ck_run_connection(const ck_connection* c, ck_report** out, char** system_json) {
  return guard([&] {
    need(c, "connection");
    need(out, "output");
    std::string sys;
    ReportBundle b = run_connection(c->file, &sys);
    char* s = system_json ? dup(sys) : nullptr;
    *out = new ck_report{std::move(b)};
    if (system_json) *system_json = s;
  });
}

ck_status ck_run_lubin_tate(unsigned r, unsigned p, ck_report** out) {
  return guard([&] {
    need(out, "output");
    *out = new ck_report{run_lubin_tate(r, p)};
  });
}

ck_status ck_report_text(const ck_report* r, ck_format fmt, char** out) {
  return guard([&] {
    need(r, "report");
    need(out, "output");
    if (fmt != CK_FORMAT_TSV && fmt != CK_FORMAT_JSON) fail(ErrorCode::UsageError, "unknown format");
    *out = dup(render(r->bundle, fmt == CK_FORMAT_JSON ? Format::Json : Format::Tsv));
  });
}

int ck_report_exit_status(const ck_report* r) { return r ? r->bundle.exit_status : 2; }

void ck_report_free(ck_report* r) { delete r; }

}  // extern "C"
