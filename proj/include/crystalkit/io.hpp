#pragma once

// JSON file formats. Parsing is fail-closed: unknown keys, wrong types and
// out-of-range values raise ParseError.

#include <optional>
#include <string>

#include "crystalkit/artin_schreier.hpp"
#include "crystalkit/connection.hpp"
#include "crystalkit/crystal.hpp"

namespace crystalkit {

struct ModuleSpec {
  std::optional<std::uint32_t> p;
  std::optional<unsigned> field_degree;
  std::optional<unsigned> precision;
  CycleType ctype;

  bool operator==(const ModuleSpec& o) const {
    return p == o.p && field_degree == o.field_degree && precision == o.precision && ctype == o.ctype;
  }
};

ModuleSpec parse_module_spec(const std::string& text);
std::string module_spec_to_json(const ModuleSpec& spec);

// {"p", "degree", "modulus": "c0,...,1" (optional), "nvars", "B", "C"}
ASSystem parse_system(const std::string& text);
std::string system_to_json(const ASSystem& sys);

struct ConnectionFile {
  ConnectionInput input;
  std::optional<LieBasis> lie;
};
ConnectionFile parse_connection(const std::string& text);
std::string connection_to_json(const ConnectionFile& file);

// "c0,c1,...,1" for a monic modulus.
std::string modulus_str(Field f);

std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t v);

}  // namespace crystalkit
