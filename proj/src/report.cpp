#include "crystalkit/report.hpp"

#include <json.hpp>

#include "crystalkit/embedding.hpp"
#include "crystalkit/error.hpp"
#include "crystalkit/valuation.hpp"

namespace crystalkit {

const char* error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::ReducibleModulus: return "ReducibleModulus";
    case ErrorCode::IncompatibleFields: return "IncompatibleFields";
    case ErrorCode::MismatchedStructure: return "MismatchedStructure";
    case ErrorCode::NotSingular: return "NotSingular";
    case ErrorCode::OracleMismatch: return "OracleMismatch";
    case ErrorCode::NotACycle: return "NotACycle";
    case ErrorCode::BadShape: return "BadShape";
    case ErrorCode::FieldTooSmall: return "FieldTooSmall";
    case ErrorCode::BadR: return "BadR";
    case ErrorCode::InconsistentInput: return "InconsistentInput";
    case ErrorCode::RankDeficientLie: return "RankDeficientLie";
    case ErrorCode::PrecisionLimit: return "PrecisionLimit";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UsageError: return "UsageError";
  }
  return "Unknown";
}

namespace {

using json = nlohmann::ordered_json;

template <typename T>
std::string join(const std::vector<T>& v, const char* sep = ",") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    if constexpr (std::is_same_v<T, std::string>) {
      s += v[i];
    } else {
      s += std::to_string(v[i]);
    }
  }
  return s;
}

std::string cycles_str(const std::vector<std::vector<unsigned>>& cycles) {
  std::string s;
  for (const auto& c : cycles) s += "(" + join(c, " ") + ")";
  return s;
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

ReportBundle bundle(const std::string& command, const std::string& canonical_input) {
  ReportBundle b;
  b.command = command;
  b.input_digest = hex64(fnv1a64(command + "\n" + canonical_input));
  return b;
}

std::uint32_t resolve_p(const ModuleSpec& spec, std::optional<std::uint32_t> p) {
  if (p) {
    require(is_prime(*p), ErrorCode::NotPrime, std::to_string(*p) + " is not prime");
    require(*p < 65536, ErrorCode::UsageError, "p must be below 65536");
    return *p;
  }
  require(spec.p.has_value(), ErrorCode::UsageError, "p is required (spec key \"p\" or -p)");
  return *spec.p;
}

}  // namespace

std::string render(const ReportBundle& b, Format fmt) {
  if (fmt == Format::Json) {
    json j;
    j["command"] = b.command;
    j["input_digest"] = b.input_digest;
    json tables = json::array();
    for (const auto& t : b.tables) {
      json tj;
      tj["name"] = t.name;
      tj["columns"] = t.columns;
      tj["rows"] = t.rows;
      tables.push_back(tj);
    }
    j["tables"] = tables;
    json diag = json::object();
    for (const auto& [k, v] : b.diagnostics) diag[k] = v;
    j["diagnostics"] = diag;
    j["exit_status"] = b.exit_status;
    return j.dump(2) + "\n";
  }
  std::string out;
  auto block = [&](const std::vector<std::string>& cols, const std::vector<std::vector<std::string>>& rows) {
    if (!out.empty()) out += "\n";
    out += join(cols, "\t") + "\n";
    for (const auto& r : rows) out += join(r, "\t") + "\n";
  };
  for (const auto& t : b.tables) block(t.columns, t.rows);
  if (!b.diagnostics.empty()) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& [k, v] : b.diagnostics) rows.push_back({k, v});
    block({"key", "value"}, rows);
  }
  return out;
}

ReportBundle run_newton(const ModuleSpec& spec) {
  ReportBundle b = bundle("newton", module_spec_to_json(spec));
  Table t{"newton", {"slope", "mult"}, {}};
  for (const auto& pt : newton_polygon(spec.ctype)) t.rows.push_back({rational_str(pt.slope), std::to_string(pt.mult)});
  b.tables.push_back(std::move(t));
  return b;
}

ReportBundle run_valuations(const ModuleSpec& spec, std::optional<std::uint32_t> p_opt) {
  const std::uint32_t p = resolve_p(spec, p_opt);
  ReportBundle b = bundle("valuations", module_spec_to_json(spec) + "p=" + std::to_string(p));
  const ValuationProfile prof = valuation_profile(spec.ctype, p);
  Table t{"valuations", {"index", "eps", "Q", "vZ", "w"}, {}};
  for (unsigned i = 1; i <= spec.ctype.rank(); ++i) {
    t.rows.push_back({std::to_string(i), std::to_string(spec.ctype.eps(i)), prof.Q.at(i).str(),
                      rational_str(prof.vZ.at(i)), rational_str(prof.w.at(i))});
  }
  b.tables.push_back(std::move(t));
  return b;
}

ReportBundle run_example43(std::uint32_t p, unsigned q0, unsigned q1, unsigned n, unsigned m) {
  ReportBundle b = bundle("example43", "p=" + std::to_string(p) + " q0=" + std::to_string(q0) +
                                           " q1=" + std::to_string(q1) + " n=" + std::to_string(n) +
                                           " m=" + std::to_string(m));
  const Example43Report rep = example_43_report(p, q0, q1, n, m);
  Table cls{"classes",
            {"class", "indices", "eps", "vZ", "w", "printed_value", "printed_x", "printed_x_matches"},
            {}};
  for (const auto& c : rep.classes) {
    cls.rows.push_back({c.name, join(c.indices), std::to_string(c.eps), rational_str(c.derived_vZ),
                        rational_str(c.derived_w), rational_str(c.printed_value), rational_str(c.printed_x),
                        bool_str(c.printed_x_matches)});
  }
  Table slots{"slots", {"index", "class", "eps", "Q", "vZ", "w"}, {}};
  for (unsigned i = 1; i <= rep.ctype.rank(); ++i) {
    slots.rows.push_back({std::to_string(i), rep.class_of.at(i), std::to_string(rep.ctype.eps(i)),
                          rep.profile.Q.at(i).str(), rational_str(rep.profile.vZ.at(i)),
                          rational_str(rep.profile.w.at(i))});
  }
  b.tables.push_back(std::move(cls));
  b.tables.push_back(std::move(slots));
  b.diagnostics = {
      {"cycles", cycles_str(rep.ctype.cycles())},
      {"product_relation_derived", bool_str(rep.product_relation_derived)},
      {"product_relation_printed", bool_str(rep.product_relation_printed)},
      {"printed_assignment_matches", bool_str(rep.printed_assignment_matches)},
      {"transposed_assignment_matches", bool_str(rep.transposed_assignment_matches)},
      {"slots_uniform", bool_str(rep.slots_uniform)},
      {"all_in_bounds", bool_str(rep.all_in_bounds)},
  };
  if (!rep.printed_assignment_matches) {
    b.diagnostics.emplace_back("printed_assignment",
                               rep.transposed_assignment_matches
                                   ? "unconfirmed: printed (iii)/(iv) exponents match the transposed slots"
                                   : "unconfirmed: printed exponents match neither assignment");
  }
  return b;
}

ReportBundle run_embed(const ModuleSpec& spec, std::optional<std::uint32_t> p_opt,
                       std::optional<unsigned> precision, std::optional<unsigned> r_opt) {
  const std::uint32_t p = resolve_p(spec, p_opt);
  const unsigned m = precision.value_or(spec.precision.value_or(1));
  require(m >= 1, ErrorCode::UsageError, "precision must be >= 1");
  const EmbeddingParameters probe = embedding_parameters(spec.ctype);
  require(probe.r_admissible != 0, ErrorCode::BadR, "no admissible r found");
  const unsigned r = r_opt.value_or(probe.r_admissible);
  const unsigned degree = spec.field_degree.value_or(r);
  ReportBundle b = bundle("embed", module_spec_to_json(spec) + "p=" + std::to_string(p) + " m=" +
                                       std::to_string(m) + " r=" + std::to_string(r) + " n=" +
                                       std::to_string(degree));
  const Field k = make_field(p, degree);
  const EmbeddingPlan plan = build_embedding(standard_module(p, m, spec.ctype, k), r);
  const EmbeddingReport rep = verify_embedding(plan);
  const auto& par = plan.params;
  b.tables.push_back({"parameters",
                      {"key", "value"},
                      {{"o_pi", std::to_string(par.o_pi)},
                       {"n_pi", std::to_string(par.n_pi)},
                       {"r_min", std::to_string(par.r_min)},
                       {"r_admissible", std::to_string(par.r_admissible)},
                       {"r", std::to_string(par.r)},
                       {"field", k->describe()},
                       {"precision", std::to_string(m)}}});
  Table cls{"classes",
            {"class", "q", "eps", "cycles", "weight", "tensor_weight", "s_list", "l_list", "orbit_key",
             "zetas"},
            {}};
  for (std::size_t c = 0; c < par.classes.size(); ++c) {
    const auto& e = par.classes[c];
    std::vector<std::string> z;
    for (const auto& x : e.zetas) z.push_back(x.str());
    cls.rows.push_back({std::to_string(c), std::to_string(e.q), join(e.eps_pattern), cycles_str(e.cycles),
                        std::to_string(e.weight), std::to_string(e.tensor_weight), join(e.s_list),
                        join(e.l_list), e.etale ? "unit" : join(e.orbit_key), join(z, ";")});
  }
  b.tables.push_back(std::move(cls));
  Table img{"images", {"index", "tensor", "coefficient"}, {}};
  for (std::size_t i = 0; i < plan.images.size(); ++i) {
    for (const auto& [key, c] : plan.images[i]) img.rows.push_back({std::to_string(i + 1), key.str(), c.str()});
  }
  b.tables.push_back(std::move(img));
  b.tables.push_back({"checks",
                      {"check", "result"},
                      {{"equivariant", bool_str(rep.equivariant)},
                       {"filtration", bool_str(rep.filtration)},
                       {"injective_mod_p", bool_str(rep.injective)},
                       {"projector", bool_str(rep.projector)},
                       {"u_pattern", bool_str(rep.u_pattern)},
                       {"l_distinct", bool_str(rep.l_distinct)},
                       {"supports_disjoint", bool_str(rep.supports_disjoint)}}});
  for (const auto& [a, c] : rep.shared_orbits) {
    b.diagnostics.emplace_back("shared_orbit", std::to_string(a) + "," + std::to_string(c));
  }
  for (const auto& f : rep.failures) b.diagnostics.emplace_back("failure", f);
  b.exit_status = rep.ok() ? 0 : 1;
  return b;
}

ReportBundle run_solve(const ASSystem& sys, unsigned ext) {
  ReportBundle b = bundle("solve-as", system_to_json(sys) + "ext=" + std::to_string(ext));
  const SolutionSet sol = solve_over(sys, ext);
  Table t{"solutions", {}, {}};
  for (unsigned i = 1; i <= sys.nvars; ++i) t.columns.push_back("x" + std::to_string(i));
  for (const auto& s : sol.all) {
    std::vector<std::string> row;
    for (const auto& e : s) row.push_back(e.str());
    t.rows.push_back(std::move(row));
  }
  b.tables.push_back(std::move(t));
  const GeometricCount g = geometric_count(sys);
  b.diagnostics = {{"field", sol.field->describe()},
                   {"solution_count", std::to_string(sol.all.size())},
                   {"homogeneous_dim", std::to_string(sol.homogeneous_dim)},
                   {"geometric_m", std::to_string(g.m)},
                   {"geometric_count", g.count.get_str()},
                   {"boundary", bool_str(boundary_test(sys))}};
  return b;
}

ReportBundle run_connection(const ConnectionFile& file, std::string* system_json) {
  ReportBundle b = bundle("connection", connection_to_json(file));
  const ASSystem sys = compile_system(file.input);
  Table B{"B", {"row", "col", "value"}, {}};
  for (unsigned r = 0; r < sys.nvars; ++r) {
    for (unsigned c = 0; c < sys.nvars; ++c) {
      if (!sys.B[r][c].is_zero()) B.rows.push_back({std::to_string(r), std::to_string(c), sys.B[r][c].str()});
    }
  }
  Table C{"C", {"row", "value"}, {}};
  for (unsigned r = 0; r < sys.nvars; ++r) C.rows.push_back({std::to_string(r), sys.C[r].str()});
  b.tables.push_back(std::move(B));
  b.tables.push_back(std::move(C));
  b.diagnostics.emplace_back("nvars", std::to_string(sys.nvars));
  std::string emitted = system_to_json(sys);
  if (file.lie) {
    const LieReduction red = reduce_by_lie_constraints(sys, file.input.d_M, file.input.d, *file.lie);
    b.diagnostics.emplace_back("reduced_nvars", std::to_string(red.reduced.nvars));
    b.diagnostics.emplace_back("pivot_rows", join(red.pivot_rows));
    b.diagnostics.emplace_back("residual_rows", std::to_string(red.residual_rows.size()));
    emitted = system_to_json(red.reduced);
  }
  if (system_json) *system_json = emitted;
  return b;
}

ReportBundle run_lubin_tate(unsigned r, std::uint32_t p) {
  ReportBundle b = bundle("lubin-tate", "r=" + std::to_string(r) + " p=" + std::to_string(p));
  const auto w = lubin_tate_w(r, p);
  Table t{"lubin_tate", {"index", "w"}, {}};
  for (std::size_t i = 0; i < w.size(); ++i) t.rows.push_back({std::to_string(i + 1), rational_str(w[i])});
  b.tables.push_back(std::move(t));
  const SumIdentity s = sum_identity(r, p);
  b.diagnostics = {{"lhs", rational_str(s.lhs)},
                   {"sum", rational_str(s.lt_sum)},
                   {"target", rational_str(s.target)},
                   {"identity_holds", bool_str(s.holds)}};
  return b;
}

}  // namespace crystalkit
