#pragma once

// Report bundles and the command drivers behind the CLI.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crystalkit/io.hpp"

namespace crystalkit {

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct ReportBundle {
  std::string command;
  std::string input_digest;
  std::vector<Table> tables;
  std::vector<std::pair<std::string, std::string>> diagnostics;
  int exit_status = 0;
};

enum class Format { Tsv, Json };

// TSV: one block per table (header row first), blocks separated by a blank
// line, diagnostics last as a key/value block when present.
std::string render(const ReportBundle& b, Format fmt);

ReportBundle run_newton(const ModuleSpec& spec);
ReportBundle run_valuations(const ModuleSpec& spec, std::optional<std::uint32_t> p);
ReportBundle run_example43(std::uint32_t p, unsigned q0, unsigned q1, unsigned n, unsigned m);
ReportBundle run_embed(const ModuleSpec& spec, std::optional<std::uint32_t> p,
                       std::optional<unsigned> precision, std::optional<unsigned> r);
ReportBundle run_solve(const ASSystem& sys, unsigned ext);
// system_json receives the compiled system, or the reduced one when the
// input carries a Lie basis.
ReportBundle run_connection(const ConnectionFile& file, std::string* system_json);
ReportBundle run_lubin_tate(unsigned r, std::uint32_t p);

}  // namespace crystalkit
