#include "crystalkit/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <set>

#include "crystalkit/error.hpp"

namespace crystalkit {

using json = nlohmann::ordered_json;

namespace {

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
  }
}

void check_keys(const json& j, std::initializer_list<const char*> allowed, const char* what) {
  require(j.is_object(), ErrorCode::ParseError, std::string(what) + " must be a JSON object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = j.begin(); it != j.end(); ++it) {
    require(ok.count(it.key()) > 0, ErrorCode::ParseError,
            std::string("unknown key '") + it.key() + "' in " + what);
  }
}

const json& field_at(const json& j, const char* key) {
  require(j.contains(key), ErrorCode::ParseError, std::string("missing key '") + key + "'");
  return j.at(key);
}

std::uint64_t as_uint(const json& v, const char* what, std::uint64_t max = 0xffffffffULL) {
  require(v.is_number_unsigned(), ErrorCode::ParseError, std::string(what) + " must be a non-negative integer");
  const auto x = v.get<std::uint64_t>();
  require(x <= max, ErrorCode::ParseError, std::string(what) + " is out of range");
  return x;
}

const json& as_array(const json& v, const char* what) {
  require(v.is_array(), ErrorCode::ParseError, std::string(what) + " must be an array");
  return v;
}

std::string as_string(const json& v, const char* what) {
  require(v.is_string(), ErrorCode::ParseError, std::string(what) + " must be a string");
  return v.get<std::string>();
}

std::vector<Coeff> parse_modulus(const std::string& text, std::uint32_t p, unsigned degree) {
  std::vector<Coeff> c;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string tok = text.substr(pos, comma - pos);
    require(!tok.empty() && tok.size() <= 9 && tok.find_first_not_of("0123456789") == std::string::npos,
            ErrorCode::ParseError, "bad modulus '" + text + "'");
    const unsigned long v = std::stoul(tok);
    require(v < p, ErrorCode::ParseError, "modulus coefficient not reduced mod p");
    c.push_back(static_cast<Coeff>(v));
    pos = comma + 1;
  }
  require(c.size() == degree + 1 && c.back() == 1, ErrorCode::ParseError,
          "modulus must be monic of the stated degree, listed low to high");
  return c;
}

Field parse_field(const json& j) {
  const auto p = static_cast<std::uint32_t>(as_uint(field_at(j, "p"), "p"));
  require(is_prime(p), ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  require(p < 65536, ErrorCode::ParseError, "p must be below 65536");
  const unsigned degree = static_cast<unsigned>(as_uint(field_at(j, "degree"), "degree", 4096));
  require(degree >= 1, ErrorCode::ParseError, "degree must be >= 1");
  std::optional<std::vector<Coeff>> mod;
  if (j.contains("modulus")) mod = parse_modulus(as_string(j.at("modulus"), "modulus"), p, degree);
  return make_field(p, degree, mod);
}

void put_field(json& j, Field f) {
  j["p"] = f->p();
  j["degree"] = f->degree();
  j["modulus"] = modulus_str(f);
}

FFElement element(const json& v, Field f) { return parse_element(f, as_string(v, "field element")); }

FVector vector_of(const json& v, Field f, std::size_t n, const char* what) {
  as_array(v, what);
  require(v.size() == n, ErrorCode::BadShape, std::string(what) + " must have length " + std::to_string(n));
  FVector out;
  for (const auto& e : v) out.push_back(element(e, f));
  return out;
}

FMatrix matrix_of(const json& v, Field f, std::size_t rows, std::size_t cols, const char* what) {
  as_array(v, what);
  require(v.size() == rows, ErrorCode::BadShape, std::string(what) + " must have " + std::to_string(rows) + " rows");
  FMatrix out;
  for (const auto& row : v) out.push_back(vector_of(row, f, cols, what));
  return out;
}

json vector_json(const FVector& v) {
  json a = json::array();
  for (const auto& e : v) a.push_back(e.str());
  return a;
}

json matrix_json(const FMatrix& m) {
  json a = json::array();
  for (const auto& row : m) a.push_back(vector_json(row));
  return a;
}

template <typename F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, e.what());
  }
}

}  // namespace

std::string modulus_str(Field f) {
  std::string s;
  for (std::size_t i = 0; i < f->modulus().size(); ++i) {
    if (i) s += ",";
    s += std::to_string(f->modulus()[i]);
  }
  return s;
}

ModuleSpec parse_module_spec(const std::string& text) {
  return guarded([&] {
    const json j = parse_json(text);
    check_keys(j, {"p", "field_degree", "precision", "cycles", "epsilon"}, "module spec");
    ModuleSpec spec;
    if (j.contains("p")) {
      const auto p = static_cast<std::uint32_t>(as_uint(j.at("p"), "p"));
      require(is_prime(p), ErrorCode::NotPrime, std::to_string(p) + " is not prime");
      require(p < 65536, ErrorCode::ParseError, "p must be below 65536");
      spec.p = p;
    }
    if (j.contains("field_degree")) {
      spec.field_degree = static_cast<unsigned>(as_uint(j.at("field_degree"), "field_degree", 4096));
      require(*spec.field_degree >= 1, ErrorCode::ParseError, "field_degree must be >= 1");
    }
    if (j.contains("precision")) {
      spec.precision = static_cast<unsigned>(as_uint(j.at("precision"), "precision", 64));
      require(*spec.precision >= 1, ErrorCode::ParseError, "precision must be >= 1");
    }
    std::vector<std::vector<unsigned>> cycles;
    for (const auto& c : as_array(field_at(j, "cycles"), "cycles")) {
      std::vector<unsigned> cyc;
      for (const auto& i : as_array(c, "cycle")) cyc.push_back(static_cast<unsigned>(as_uint(i, "cycle index", 1u << 20)));
      cycles.push_back(std::move(cyc));
    }
    std::vector<int> eps;
    for (const auto& e : as_array(field_at(j, "epsilon"), "epsilon")) {
      eps.push_back(static_cast<int>(as_uint(e, "epsilon entry", 1)));
    }
    spec.ctype = CycleType(cycles, eps);
    return spec;
  });
}

std::string module_spec_to_json(const ModuleSpec& spec) {
  json j;
  if (spec.p) j["p"] = *spec.p;
  if (spec.field_degree) j["field_degree"] = *spec.field_degree;
  if (spec.precision) j["precision"] = *spec.precision;
  j["cycles"] = spec.ctype.cycles();
  j["epsilon"] = spec.ctype.eps();
  return j.dump(2) + "\n";
}

ASSystem parse_system(const std::string& text) {
  return guarded([&] {
    const json j = parse_json(text);
    check_keys(j, {"p", "degree", "modulus", "nvars", "B", "C"}, "system");
    const Field f = parse_field(j);
    const auto n = static_cast<unsigned>(as_uint(field_at(j, "nvars"), "nvars", 4096));
    FMatrix B = matrix_of(field_at(j, "B"), f, n, n, "B");
    FVector C = vector_of(field_at(j, "C"), f, n, "C");
    return make_system(f, std::move(B), std::move(C));
  });
}

std::string system_to_json(const ASSystem& sys) {
  sys.validate();
  json j;
  put_field(j, sys.field);
  j["nvars"] = sys.nvars;
  j["B"] = matrix_json(sys.B);
  j["C"] = vector_json(sys.C);
  return j.dump(2) + "\n";
}

ConnectionFile parse_connection(const std::string& text) {
  return guarded([&] {
    const json j = parse_json(text);
    check_keys(j, {"p", "degree", "modulus", "d_M", "d", "epsilon", "a_bar", "da_bar", "phi_images",
                   "z_point", "lie"},
               "connection input");
    ConnectionFile out;
    ConnectionInput& in = out.input;
    in.field = parse_field(j);
    in.d_M = static_cast<unsigned>(as_uint(field_at(j, "d_M"), "d_M", 64));
    in.d = static_cast<unsigned>(as_uint(field_at(j, "d"), "d", 64));
    require(in.d_M >= 1 && in.d >= 1, ErrorCode::BadShape, "d_M and d must be positive");
    const json& e = as_array(field_at(j, "epsilon"), "epsilon");
    for (const auto& x : e) in.eps.push_back(static_cast<int>(as_uint(x, "epsilon entry", 1)));
    in.a_bar = matrix_of(field_at(j, "a_bar"), in.field, in.d_M, in.d_M, "a_bar");
    in.phi_images = matrix_of(field_at(j, "phi_images"), in.field, in.d_M, in.d_M, "phi_images");
    const json& da = as_array(field_at(j, "da_bar"), "da_bar");
    require(da.size() == in.d_M, ErrorCode::BadShape, "da_bar must be d_M x d_M x d");
    for (const auto& row : da) in.da_bar.push_back(matrix_of(row, in.field, in.d_M, in.d, "da_bar"));
    in.z_point = vector_of(field_at(j, "z_point"), in.field, in.d, "z_point");
    if (j.contains("lie")) {
      LieBasis lie;
      for (const auto& m : as_array(j.at("lie"), "lie")) {
        lie.mats.push_back(matrix_of(m, in.field, in.d_M, in.d_M, "lie matrix"));
      }
      lie.dim = static_cast<unsigned>(lie.mats.size());
      out.lie = std::move(lie);
    }
    in.validate();
    return out;
  });
}

std::string connection_to_json(const ConnectionFile& file) {
  const ConnectionInput& in = file.input;
  json j;
  put_field(j, in.field);
  j["d_M"] = in.d_M;
  j["d"] = in.d;
  j["epsilon"] = in.eps;
  j["a_bar"] = matrix_json(in.a_bar);
  json da = json::array();
  for (const auto& m : in.da_bar) da.push_back(matrix_json(m));
  j["da_bar"] = da;
  j["phi_images"] = matrix_json(in.phi_images);
  j["z_point"] = vector_json(in.z_point);
  if (file.lie) {
    json l = json::array();
    for (const auto& m : file.lie->mats) l.push_back(matrix_json(m));
    j["lie"] = l;
  }
  return j.dump(2) + "\n";
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace crystalkit
