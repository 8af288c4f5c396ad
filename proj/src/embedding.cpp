#include "crystalkit/embedding.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "crystalkit/artin_schreier.hpp"
#include "crystalkit/error.hpp"

namespace crystalkit {

StdModule lubin_tate_module(std::uint32_t p, unsigned m, unsigned r, Field field) {
  require(r >= 1, ErrorCode::BadShape, "r must be >= 1");
  std::vector<unsigned> cyc(r);
  std::iota(cyc.begin(), cyc.end(), 1u);
  std::vector<int> eps(r, 0);
  eps[0] = 1;
  return standard_module(p, m, CycleType({cyc}, eps), field);
}

std::string TensorKey::str() const {
  if (unit >= 0) return "u" + std::to_string(unit);
  std::string s;
  for (std::size_t t = 0; t < idx.size(); ++t) {
    if (t) s += "x";
    s += std::to_string(idx[t]);
  }
  return s;
}

namespace {

unsigned wrap(long x, unsigned r) {
  long v = x % static_cast<long>(r);
  if (v < 0) v += r;
  return static_cast<unsigned>(v == 0 ? r : v);
}

std::vector<int> rotation(const std::vector<int>& e, std::size_t t) {
  std::vector<int> out(e.size());
  for (std::size_t s = 0; s < e.size(); ++s) out[s] = e[(s + t) % e.size()];
  return out;
}

// Fills s_list, l_list, u_pattern and orbit_key for the given r.
void fill_indices(EmbeddingClass& c, unsigned r) {
  const unsigned q = c.q;
  c.s_list.clear();
  c.l_list.clear();
  c.u_pattern.assign(q, 0);
  c.orbit_key.clear();
  for (unsigned s = 1; s <= q; ++s) {
    if (c.eps_pattern[s - 1] == 1) c.s_list.push_back(s);
  }
  c.weight = static_cast<unsigned>(c.s_list.size());
  c.tensor_weight = (r / q) * c.weight;
  c.etale = c.weight == 0;
  for (unsigned i = 0; i < r / q; ++i) {
    for (unsigned d = 0; d < c.weight; ++d) {
      c.l_list.push_back(static_cast<long>(r) + 2 - c.s_list[d] +
                         static_cast<long>(r - q) * i);
    }
  }
  for (unsigned s = 1; s <= q; ++s) {
    int hits = 0;
    for (long l : c.l_list) {
      if (wrap(static_cast<long>(s) - 1 + l, r) == 1) ++hits;
    }
    c.u_pattern[s - 1] = hits;
  }
  if (c.etale) return;
  std::vector<unsigned> best;
  for (unsigned w = 0; w < r; ++w) {
    std::vector<unsigned> t;
    for (long l : c.l_list) t.push_back(wrap(l + w, r));
    if (best.empty() || t < best) best = t;
  }
  c.orbit_key = best;
}

// Max over tensor orbits of the number of basis vectors mapped into it.
bool orbits_fit(const std::vector<EmbeddingClass>& classes, unsigned r) {
  std::map<std::vector<unsigned>, unsigned> load;
  for (const auto& c : classes) {
    if (c.etale) continue;
    load[c.orbit_key] += c.q * static_cast<unsigned>(c.cycles.size());
  }
  for (const auto& [key, n] : load) {
    if (n > r) return false;
  }
  return true;
}

}  // namespace

EmbeddingParameters embedding_parameters(const CycleType& ctype, std::optional<unsigned> r) {
  EmbeddingParameters out;
  std::map<std::pair<std::size_t, std::vector<int>>, std::size_t> class_of;
  out.o_pi = 1;
  for (const auto& cyc : ctype.cycles()) {
    const std::size_t q = cyc.size();
    out.o_pi = std::lcm(out.o_pi, static_cast<unsigned>(q));
    std::vector<int> e;
    for (unsigned i : cyc) e.push_back(ctype.eps(i));
    std::vector<int> canon = e;
    for (std::size_t t = 1; t < q; ++t) canon = std::min(canon, rotation(e, t));
    auto key = std::make_pair(q, canon);
    auto it = class_of.find(key);
    if (it == class_of.end()) {
      EmbeddingClass c;
      c.q = static_cast<unsigned>(q);
      c.eps_pattern = e;
      c.cycles.push_back(cyc);
      class_of.emplace(key, out.classes.size());
      out.classes.push_back(std::move(c));
      continue;
    }
    EmbeddingClass& c = out.classes[it->second];
    for (std::size_t t = 0; t < q; ++t) {
      if (rotation(e, t) != c.eps_pattern) continue;
      std::vector<unsigned> rot(q);
      for (std::size_t s = 0; s < q; ++s) rot[s] = cyc[(s + t) % q];
      c.cycles.push_back(std::move(rot));
      break;
    }
  }
  out.n_pi = 0;
  for (const auto& c : out.classes) {
    out.n_pi = std::max(out.n_pi, static_cast<unsigned>(c.cycles.size()));
  }
  out.r_min = out.o_pi * std::max(out.n_pi, 1u);
  out.r = r.value_or(out.r_min);
  require(out.r >= 1 && out.r % out.r_min == 0, ErrorCode::BadR,
          "r = " + std::to_string(out.r) + " is not a multiple of r_min = " +
              std::to_string(out.r_min));

  std::vector<EmbeddingClass> probe = out.classes;
  for (unsigned k = 1; k <= 64 && out.r_admissible == 0; ++k) {
    const unsigned rr = out.r_min * k;
    for (auto& c : probe) fill_indices(c, rr);
    if (orbits_fit(probe, rr)) out.r_admissible = rr;
  }
  int copy = 0;
  for (auto& c : out.classes) {
    fill_indices(c, out.r);
    if (!c.etale) continue;
    for (std::size_t j = 0; j < c.cycles.size(); ++j) {
      c.unit_copies.push_back(copy);
      copy += static_cast<int>(c.q);
    }
  }
  return out;
}

TensorImage target_phi(const TensorImage& x, unsigned r) {
  TensorImage out;
  for (const auto& [key, coeff] : x) {
    TensorKey k = key;
    WittVector c = sigma(coeff, 1);
    if (key.unit < 0) {
      for (auto& i : k.idx) {
        if (i == 1) c = times_p(c);
        i = wrap(static_cast<long>(i) + 1, r);
      }
    }
    if (c.is_zero()) continue;
    auto [it, fresh] = out.emplace(k, c);
    if (!fresh) it->second += c;
  }
  for (auto it = out.begin(); it != out.end();) {
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  }
  return out;
}

std::vector<TensorImage> embedding_images(const EmbeddingPlan& plan) {
  const StdModule& src = plan.source;
  const unsigned r = plan.params.r;
  const unsigned m = src.m;
  std::vector<TensorImage> images(src.ctype.rank());
  auto add = [&](TensorImage& img, const TensorKey& k, const WittVector& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = img.emplace(k, c);
    if (!fresh) it->second += c;
  };
  for (const auto& c : plan.params.classes) {
    for (std::size_t j = 0; j < c.cycles.size(); ++j) {
      const auto& cyc = c.cycles[j];
      for (unsigned s = 1; s <= c.q; ++s) {
        TensorImage& img = images[cyc[s - 1] - 1];
        if (c.etale) {
          for (unsigned t = 0; t < c.q; ++t) {
            TensorKey k;
            k.unit = c.unit_copies[j] + static_cast<int>(t);
            add(img, k, teichmuller(frobenius(c.zetas[t], s - 1), m));
          }
          continue;
        }
        for (unsigned v = 0; v < r / c.q; ++v) {
          TensorKey k;
          k.weight = c.tensor_weight;
          for (long l : c.l_list) k.idx.push_back(wrap(l + s - 1 + v * c.q, r));
          add(img, k, teichmuller(frobenius(c.zetas[j], v * c.q + s - 1), m));
        }
      }
    }
  }
  for (auto& img : images) {
    for (auto it = img.begin(); it != img.end();) {
      it = it->second.is_zero() ? img.erase(it) : std::next(it);
    }
  }
  return images;
}

namespace {

using Sparse = std::map<TensorKey, FFElement>;

std::size_t sparse_rank(const std::vector<Sparse>& rows, Field f) {
  if (rows.empty()) return 0;
  std::set<TensorKey> keys;
  for (const auto& r : rows) {
    for (const auto& [k, c] : r) keys.insert(k);
  }
  if (keys.empty()) return 0;
  std::map<TensorKey, std::size_t> col;
  for (const auto& k : keys) col.emplace(k, col.size());
  FMatrix a = zero_matrix(f, rows.size(), keys.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (const auto& [k, c] : rows[i]) a[i][col.at(k)] = c;
  }
  return rank(a);
}

// Mod-p images of one cycle for scalar zeta.
std::vector<Sparse> cycle_rows(const EmbeddingClass& c, const FFElement& zeta, unsigned r) {
  std::vector<Sparse> rows;
  for (unsigned s = 1; s <= c.q; ++s) {
    Sparse row;
    for (unsigned v = 0; v < r / c.q; ++v) {
      TensorKey k;
      k.weight = c.tensor_weight;
      for (long l : c.l_list) k.idx.push_back(wrap(l + s - 1 + v * c.q, r));
      FFElement z = frobenius(zeta, v * c.q + s - 1);
      auto [it, fresh] = row.emplace(k, z);
      if (!fresh) it->second += z;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

// F_{p^q}-independence of the zetas, via the sigma^q Moore matrix rank.
bool independent_over(const std::vector<FFElement>& z, unsigned step, unsigned cols) {
  FMatrix m;
  for (const auto& x : z) {
    FVector row;
    FFElement cur = x;
    for (unsigned j = 0; j < cols; ++j) {
      row.push_back(cur);
      cur = frobenius(cur, step);
    }
    m.push_back(std::move(row));
  }
  return rank(m) == z.size();
}

}  // namespace

EmbeddingPlan build_embedding(const StdModule& src, std::optional<unsigned> r_opt) {
  EmbeddingPlan plan;
  plan.source = src;
  EmbeddingParameters probe = embedding_parameters(src.ctype);
  require(probe.r_admissible != 0, ErrorCode::BadR, "no admissible r found");
  const unsigned r = r_opt.value_or(probe.r_admissible);
  plan.params = embedding_parameters(src.ctype, r);
  require(orbits_fit(plan.params.classes, r), ErrorCode::BadR,
          "r = " + std::to_string(r) + " leaves a tensor orbit over capacity; smallest admissible r is " +
              std::to_string(probe.r_admissible));
  const Field k = src.field;
  const std::uint32_t p = src.p;
  const unsigned n = k->degree();

  std::vector<Sparse> chosen;  // joint mod-p image rows of all weighted cycles so far
  for (auto& c : plan.params.classes) {
    if (c.etale) {
      require(n % c.q == 0, ErrorCode::FieldTooSmall,
              "field degree " + std::to_string(n) + " is not divisible by cycle length " +
                  std::to_string(c.q));
      Field sub = make_field(p, c.q);
      for (std::uint64_t idx = 1; c.zetas.size() < c.q; ++idx) {
        require(idx < *sub->order(), ErrorCode::FieldTooSmall, "no F_p-basis found");
        std::vector<FFElement> trial = c.zetas;
        trial.push_back(embed(FFElement::from_index(sub, idx), k));
        if (independent_over(trial, 1, c.q)) c.zetas = std::move(trial);
      }
      continue;
    }
    require(n % r == 0, ErrorCode::FieldTooSmall,
            "field degree " + std::to_string(n) + " must be a multiple of r = " + std::to_string(r));
    const unsigned need = r / c.q;
    Field sub = make_field(p, r);
    const auto order = sub->order();
    require(order.has_value(), ErrorCode::FieldTooSmall, "scalar field too large to search");
    for (std::uint64_t idx = 1; c.zetas.size() < need; ++idx) {
      require(idx < *order, ErrorCode::FieldTooSmall,
              "no independent scalars for a class of cycle length " + std::to_string(c.q));
      FFElement z = embed(FFElement::from_index(sub, idx), k);
      std::vector<FFElement> trial = c.zetas;
      trial.push_back(z);
      if (!independent_over(trial, c.q, need)) continue;
      if (c.zetas.size() < c.cycles.size()) {
        std::vector<Sparse> joint = chosen;
        auto rows = cycle_rows(c, z, r);
        joint.insert(joint.end(), rows.begin(), rows.end());
        if (sparse_rank(joint, k) != chosen.size() + c.q) continue;
        chosen = std::move(joint);
      }
      c.zetas = std::move(trial);
    }
  }
  plan.images = embedding_images(plan);
  return plan;
}

namespace {

bool equal_images(const TensorImage& a, const TensorImage& b) { return a == b; }

TensorImage scale_p(const TensorImage& x, int e) {
  TensorImage out;
  for (const auto& [k, c] : x) {
    WittVector v = c;
    for (int t = 0; t < e; ++t) v = times_p(v);
    if (!v.is_zero()) out.emplace(k, v);
  }
  return out;
}

void check_embedding(const EmbeddingPlan& plan, EmbeddingReport& rep) {
  const StdModule& src = plan.source;
  const CycleType& ct = src.ctype;
  const unsigned r = plan.params.r;
  const unsigned d = ct.rank();
  const Field f = src.field;
  const unsigned m = src.m;

  rep.u_pattern = true;
  rep.l_distinct = true;
  for (const auto& c : plan.params.classes) {
    for (unsigned s = 1; s <= c.q; ++s) {
      if (c.u_pattern[s - 1] != c.eps_pattern[s - 1]) rep.u_pattern = false;
    }
    std::set<unsigned> seen;
    for (long l : c.l_list) seen.insert(wrap(l, r));
    if (seen.size() != c.l_list.size()) rep.l_distinct = false;
  }
  if (!rep.u_pattern) rep.failures.push_back("u(s) pattern differs from eps");
  if (!rep.l_distinct) rep.failures.push_back("l indices collide mod r");

  // Check the recorded images; recomputation only cross-checks them.
  const auto& images = plan.images;
  if (images.size() != d) {
    rep.failures.push_back("plan has " + std::to_string(images.size()) + " images for rank " +
                           std::to_string(d));
    return;
  }
  if (images != embedding_images(plan)) rep.failures.push_back("images differ from the scalars");
  rep.equivariant = true;
  rep.filtration = true;
  for (unsigned i = 1; i <= d; ++i) {
    const auto& img = images[i - 1];
    if (img.empty()) {
      rep.equivariant = false;
      rep.failures.push_back("a_" + std::to_string(i) + " maps to zero");
      continue;
    }
    if (!equal_images(target_phi(img, r), scale_p(images[ct.pi(i) - 1], ct.eps(i)))) {
      rep.equivariant = false;
      rep.failures.push_back("phi-equivariance fails at a_" + std::to_string(i));
    }
    for (const auto& [key, c] : img) {
      const int deg = key.unit >= 0 ? 0
                                    : static_cast<int>(std::count(key.idx.begin(), key.idx.end(), 1u));
      if (deg != ct.eps(i)) {
        rep.filtration = false;
        rep.failures.push_back("filtration degree " + std::to_string(deg) + " at a_" +
                               std::to_string(i) + " in " + key.str());
        break;
      }
    }
  }

  std::set<TensorKey> keys;
  for (const auto& img : images) {
    for (const auto& [k, c] : img) keys.insert(k);
  }
  rep.support.assign(keys.begin(), keys.end());
  std::map<TensorKey, std::size_t> col;
  for (const auto& k : rep.support) col.emplace(k, col.size());
  const std::size_t K = rep.support.size();

  // C: K x d, column i is the image of a_i.
  WMatrix C = wzero(f, m, K, d);
  for (unsigned i = 0; i < d; ++i) {
    for (const auto& [k, c] : images[i]) C[col.at(k)][i] = c;
  }
  FMatrix Cbar = reduce_mod_p(C);
  rep.image_rank = static_cast<unsigned>(K ? rank(Cbar) : 0);
  rep.injective = rep.image_rank == d;
  if (!rep.injective) {
    rep.failures.push_back("mod-p rank " + std::to_string(rep.image_rank) + " < " + std::to_string(d));
  }

  rep.projector = false;
  if (rep.injective) {
    auto rows = independent_rows(Cbar);
    WMatrix S = wzero(f, m, d, d);
    for (unsigned t = 0; t < d; ++t) S[t] = C[rows[t]];
    auto Sinv = winverse(S);
    if (Sinv) {
      // L = S^{-1} composed with the coordinate restriction.
      WMatrix L = wzero(f, m, d, K);
      for (unsigned a = 0; a < d; ++a) {
        for (unsigned t = 0; t < d; ++t) L[a][rows[t]] = (*Sinv)[a][t];
      }
      const WMatrix LC = wmatmul(L, C);
      const WMatrix P = wmatmul(C, L);
      const WMatrix PC = wmatmul(P, C);
      rep.projector = LC == widentity(f, m, d) && PC == C;
      rep.projector_matrix = P;
      if (!rep.projector) rep.failures.push_back("projector identities fail");
    } else {
      rep.failures.push_back("selected minor not invertible");
    }
  }

  rep.supports_disjoint = true;
  const auto& cls = plan.params.classes;
  for (std::size_t a = 0; a < cls.size(); ++a) {
    for (std::size_t b = a + 1; b < cls.size(); ++b) {
      std::set<TensorKey> sa, sb;
      for (const auto& cyc : cls[a].cycles) {
        for (unsigned i : cyc) {
          for (const auto& [k, c] : images[i - 1]) sa.insert(k);
        }
      }
      for (const auto& cyc : cls[b].cycles) {
        for (unsigned i : cyc) {
          for (const auto& [k, c] : images[i - 1]) sb.insert(k);
        }
      }
      const bool overlap = std::any_of(sa.begin(), sa.end(), [&](const TensorKey& k) { return sb.count(k) > 0; });
      const bool same_orbit = !cls[a].etale && !cls[b].etale && cls[a].orbit_key == cls[b].orbit_key;
      if (same_orbit) rep.shared_orbits.emplace_back(a, b);
      if (overlap && !same_orbit) {
        rep.supports_disjoint = false;
        rep.failures.push_back("classes " + std::to_string(a) + " and " + std::to_string(b) +
                               " share tensors outside a common orbit");
      }
    }
  }
}

}  // namespace

EmbeddingReport verify_embedding(const EmbeddingPlan& plan) {
  EmbeddingReport rep;
  try {
    check_embedding(plan, rep);
  } catch (const std::exception& e) {
    rep.failures.push_back(std::string("error: ") + e.what());
  }
  return rep;
}

}  // namespace crystalkit
