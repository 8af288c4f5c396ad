// crystalkit command-line driver; links only the C API.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "crystalkit/crystalkit.h"

namespace {

constexpr int kDomainError = 1;
constexpr int kUsageError = 2;

struct Options {
  std::string spec, system, out, system_out, format = "tsv";
  unsigned ext = 1, p = 0, precision = 0, r = 0;
  unsigned q0 = 0, q1 = 0, n = 0, m = 0;
};

bool read_file(const std::string& path, std::string& text) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  text = ss.str();
  return true;
}

bool write_text(const std::string& path, const char* text) {
  if (path.empty()) {
    std::fputs(text, stdout);
    return std::fflush(stdout) == 0;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

int domain_failure(ck_status s) {
  std::cerr << ck_status_name(s) << ": " << ck_last_error() << "\n";
  return s == CK_USAGE_ERROR ? kUsageError : kDomainError;
}

template <typename Parse, typename Handle>
int load(const std::string& path, const char* flag, Parse parse, Handle** out) {
  if (path.empty()) {
    std::cerr << "UsageError: " << flag << " is required\n";
    return kUsageError;
  }
  std::string text;
  if (!read_file(path, text)) {
    std::cerr << "UsageError: cannot read " << path << "\n";
    return kUsageError;
  }
  const ck_status s = parse(text.c_str(), out);
  return s == CK_OK ? 0 : domain_failure(s);
}

int emit(ck_report* rep, const Options& o) {
  char* text = nullptr;
  const ck_status s = ck_report_text(rep, o.format == "json" ? CK_FORMAT_JSON : CK_FORMAT_TSV, &text);
  if (s != CK_OK) {
    ck_report_free(rep);
    return domain_failure(s);
  }
  const bool ok = write_text(o.out, text);
  ck_string_free(text);
  int code = ck_report_exit_status(rep);
  ck_report_free(rep);
  if (!ok) {
    std::cerr << "UsageError: cannot write " << o.out << "\n";
    return kUsageError;
  }
  if (code != 0) std::cerr << "verification failed\n";
  return code;
}

int run(const std::string& cmd, const Options& o) {
  ck_report* rep = nullptr;
  ck_status s = CK_OK;
  if (cmd == "newton" || cmd == "valuations" || cmd == "embed") {
    ck_module* mod = nullptr;
    if (int rc = load(o.spec, "--spec", ck_module_parse, &mod)) return rc;
    if (cmd == "newton") s = ck_run_newton(mod, &rep);
    else if (cmd == "valuations") s = ck_run_valuations(mod, o.p, &rep);
    else s = ck_run_embed(mod, o.p, o.precision, o.r, &rep);
    ck_module_free(mod);
  } else if (cmd == "solve-as") {
    ck_system* sys = nullptr;
    if (int rc = load(o.system, "--system", ck_system_parse, &sys)) return rc;
    s = ck_run_solve(sys, o.ext, &rep);
    ck_system_free(sys);
  } else if (cmd == "connection") {
    ck_connection* con = nullptr;
    if (int rc = load(o.spec, "--spec", ck_connection_parse, &con)) return rc;
    char* sys = nullptr;
    s = ck_run_connection(con, &rep, o.system_out.empty() ? nullptr : &sys);
    ck_connection_free(con);
    if (s == CK_OK && sys) {
      const bool ok = write_text(o.system_out, sys);
      ck_string_free(sys);
      if (!ok) {
        ck_report_free(rep);
        std::cerr << "UsageError: cannot write " << o.system_out << "\n";
        return kUsageError;
      }
    }
  } else if (cmd == "example43") {
    s = ck_run_example43(o.p, o.q0, o.q1, o.n, o.m, &rep);
  } else if (cmd == "lubin-tate") {
    s = ck_run_lubin_tate(o.r, o.p, &rep);
  }
  if (s != CK_OK) return domain_failure(s);
  return emit(rep, o);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with Dieudonne modules, Witt vectors and Artin-Schreier systems"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ck_version()));
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "Write the report here instead of standard output");
    sub->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"tsv", "json"}));
  };
  auto prime = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("-p", o.p, "Prime");
    if (required) opt->required();
  };

  auto* newton = app.add_subcommand("newton", "Newton polygon of a cycle-type module");
  newton->add_option("--spec", o.spec, "Module spec file")->required();
  common(newton);

  auto* val = app.add_subcommand("valuations", "Exact valuations of the root system");
  val->add_option("--spec", o.spec, "Module spec file")->required();
  prime(val, false);
  common(val);

  auto* ex = app.add_subcommand("example43", "Valuation classes of the two-slope example");
  prime(ex, true);
  ex->add_option("--q0", o.q0, "Fixed points with eps = 0")->required();
  ex->add_option("--q1", o.q1, "Fixed points with eps = 1")->required();
  ex->add_option("--n", o.n, "Number of eps = 0 indices")->required();
  ex->add_option("--m", o.m, "Number of eps = 1 indices")->required();
  common(ex);

  auto* emb = app.add_subcommand("embed", "Embed into tensor powers of the Lubin-Tate module");
  emb->add_option("--spec", o.spec, "Module spec file")->required();
  prime(emb, false);
  emb->add_option("--precision", o.precision, "Witt vector length")->check(CLI::PositiveNumber);
  emb->add_option("--r", o.r, "Lubin-Tate rank")->check(CLI::PositiveNumber);
  common(emb);

  auto* solve = app.add_subcommand("solve-as", "Solve x = B x^[p] + C over an extension");
  solve->add_option("--system", o.system, "System file")->required();
  solve->add_option("--ext", o.ext, "Extension degree")->check(CLI::PositiveNumber);
  common(solve);

  auto* con = app.add_subcommand("connection", "Compile horizontality equations to a system");
  con->add_option("--spec", o.spec, "Connection input file")->required();
  con->add_option("--system-out", o.system_out, "Write the compiled or reduced system file here");
  common(con);

  auto* lt = app.add_subcommand("lubin-tate", "Lubin-Tate valuations and their sum identity");
  lt->add_option("--r", o.r, "Rank")->required()->check(CLI::PositiveNumber);
  prime(lt, true);
  common(lt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsageError;
  }
  return run(app.get_subcommands().front()->get_name(), o);
}
