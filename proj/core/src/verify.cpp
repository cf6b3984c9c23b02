#include "symspread/verify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "symspread/zsig.hpp"

namespace symspread {

namespace {

/// Per-context artifact cache shared by the checks of one run.
struct Workspace {
  const Tower& t;
  Caps caps;
  GramForm gram;
  MatQ pi, rho;
  Spread spr;

  std::optional<MatGroup> g_cache;
  std::optional<MatGroup> sp_cache;
  bool sp_over_cap = false;
  std::string sp_skip_reason;

  Workspace(const Tower& tower, const Caps& c)
      : t(tower),
        caps(c),
        gram(gram_from_trace_form(tower)),
        pi(build_pi(tower)),
        rho(build_rho(tower)),
        spr(build_spread(tower)) {}

  const MatGroup& metacyclic_group() {
    if (!g_cache) g_cache = closure(t.fq(), {pi, rho}, caps.max_group_order);
    return *g_cache;
  }

  const MatGroup* symplectic_group() {
    if (sp_cache) return &*sp_cache;
    if (sp_over_cap) return nullptr;
    try {
      sp_cache = enumerate_sp(t, caps.max_group_order);
      return &*sp_cache;
    } catch (const CapExceeded& e) {
      sp_over_cap = true;
      sp_skip_reason = e.what();
      return nullptr;
    }
  }

  MatQ minus_identity() const { return mat_neg(t.fq(), MatQ::identity(t.dim())); }
  bool hypothesis_q1_or_m_even() const { return t.q() % 4 == 1 || t.m() % 2 == 0; }
};

/// Accumulates witnesses and the pass/fail/skip outcome of one check body.
struct Outcome {
  std::vector<std::string> witnesses;
  bool failed = false;
  bool skipped = false;
  std::string skip_reason;

  void confirm(std::string s) { witnesses.push_back(std::move(s)); }

  bool check(bool ok, const std::string& claim) {
    if (ok) {
      witnesses.push_back(claim);
    } else {
      failed = true;
      witnesses.push_back("violated: " + claim);
    }
    return ok;
  }

  void fail(std::string counterexample) {
    failed = true;
    witnesses.push_back("counterexample: " + std::move(counterexample));
  }

  void skip(std::string reason) {
    skipped = true;
    skip_reason = std::move(reason);
  }
};

std::string vec_to_string(std::span<const u64> v) {
  std::string out = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(v[i]);
  }
  return out + "]";
}

// ---------------------------------------------------------------------------
// Check bodies
// ---------------------------------------------------------------------------

void check_spread_valid(Workspace& ws, Outcome& oc) {
  SpreadValidation v = validate_spread(ws.t.fq(), ws.spr, ws.gram);
  if (v.ok) {
    for (auto& c : v.confirmations) oc.confirm(std::move(c));
  } else {
    oc.fail(fmt::format("{}: {}", v.failed_invariant, v.witness));
  }
}

void check_form_nondegenerate(Workspace& ws, Outcome& oc) {
  const auto& fq = ws.t.fq();
  const MatQ& g = ws.gram.gram;
  bool alternating = true;
  for (int i = 0; i < g.n && alternating; ++i) {
    if (g(i, i) != 0) alternating = false;
    for (int j = 0; j < g.n; ++j) {
      if (g(i, j) != fq.neg(g(j, i))) alternating = false;
    }
  }
  oc.check(alternating, "Gram matrix is alternating (skew with zero diagonal)");
  oc.check(mat_inverse(fq, g).has_value(), "Gram matrix is invertible");
}

void check_pi_rho_isometry(Workspace& ws, Outcome& oc) {
  const auto& fq = ws.t.fq();
  oc.check(is_isometry(fq, ws.pi, ws.gram), "pi preserves the form");
  oc.check(is_isometry(fq, ws.rho, ws.gram), "rho preserves the form");
}

void check_pi_rho_relation(Workspace& ws, Outcome& oc) {
  const auto& fq = ws.t.fq();
  // Operators compose left to right on row vectors: pi.rho (apply rho, then
  // pi) has matrix M_rho * M_pi.
  MatQ lhs = mat_mul(fq, ws.rho, ws.pi);
  MatQ rhs = mat_mul(fq, ws.pi, mat_pow(fq, ws.rho, ws.t.q()));
  oc.check(lhs == rhs, "pi rho = rho^q pi");
}

void check_pi_rho_orders(Workspace& ws, Outcome& oc) {
  const auto& fq = ws.t.fq();
  const u64 m = static_cast<u64>(ws.t.m());
  const MatQ minus_id = ws.minus_identity();
  u64 opi = element_order(fq, ws.pi);
  u64 orho = element_order(fq, ws.rho);
  oc.check(opi == 4 * m, fmt::format("order(pi) = 4m = {}", 4 * m));
  oc.check(mat_pow(fq, ws.pi, 2 * m) == minus_id, "pi^{2m} = -I");
  oc.check(orho == ws.t.qm() + 1, fmt::format("order(rho) = q^m + 1 = {}", ws.t.qm() + 1));
  oc.check(mat_pow(fq, ws.rho, (ws.t.qm() + 1) / 2) == minus_id, "rho^{(q^m+1)/2} = -I");
}

void check_g_structure(Workspace& ws, Outcome& oc) {
  if (!ws.hypothesis_q1_or_m_even()) {
    oc.skip(fmt::format("hypothesis q = 1 mod 4 or m even fails for q = {}, m = {}",
                        ws.t.q(), ws.t.m()));
    return;
  }
  const auto& fq = ws.t.fq();
  const u64 m = static_cast<u64>(ws.t.m());
  const u64 expected_order = 2 * m * (ws.t.qm() + 1);
  const MatGroup& g = ws.metacyclic_group();
  oc.check(g.order() == expected_order,
           fmt::format("|G| = 2m(q^m+1) = {}", expected_order));

  MatGroup a = closure(fq, {mat_pow(fq, ws.rho, 2)}, ws.caps.max_group_order);
  MatGroup b = closure(fq, {ws.pi}, ws.caps.max_group_order);
  oc.check(a.order() == (ws.t.qm() + 1) / 2,
           fmt::format("A = <rho^2> has odd order (q^m+1)/2 = {}", (ws.t.qm() + 1) / 2));
  oc.check(b.order() == 4 * m, fmt::format("B = <pi> has order 4m = {}", 4 * m));
  u64 common = 0;
  for (const auto& x : a.elements) {
    if (b.contains(x)) ++common;
  }
  oc.check(common == 1, "A and B intersect trivially");
  oc.check(a.order() * b.order() == g.order(), "|G| = |A| |B|");

  StructureReport rep = structure_probe(fq, g);
  oc.check(rep.unique_involution_is_minus_identity, "G has a unique involution, -I");
  oc.check(rep.sylow2_cyclic,
           fmt::format("Sylow 2-subgroup of G is cyclic of order {}", rep.sylow2_order));
  bool normalizers_ok = !rep.order4_normalizers.empty();
  for (const auto& [key, n4] : rep.order4_normalizers) {
    if (n4 != 4 * m) normalizers_ok = false;
  }
  oc.check(normalizers_ok,
           fmt::format("each of the {} order-4 subgroups has normalizer of order 4m = {}",
                       rep.order4_normalizers.size(), 4 * m));

  // pi^m inverts A pointwise by conjugation.
  MatQ pim = mat_pow(fq, ws.pi, m);
  MatQ pim_inv = *mat_inverse(fq, pim);
  bool inverts = true;
  for (const auto& x : a.elements) {
    MatQ conj = mat_mul(fq, mat_mul(fq, pim_inv, x), pim);
    if (conj != *mat_inverse(fq, x)) {
      inverts = false;
      break;
    }
  }
  oc.check(inverts, "pi^m inverts every element of A by conjugation");
}

void check_g_transitive(Workspace& ws, Outcome& oc) {
  const auto& fq = ws.t.fq();
  const bool expected = ws.t.q() % 4 == 3;
  const MatGroup& g = ws.metacyclic_group();
  auto sizes = spread_orbit_sizes(fq, g, ws.spr);
  bool observed = sizes.size() == 1 && sizes.front() == ws.spr.members.size();
  oc.confirm(fmt::format("expected transitive = {} (q = {} mod 4)", expected, ws.t.q() % 4));
  oc.confirm(fmt::format("observed transitive = {}, orbit sizes {}", observed,
                         vec_to_string(sizes)));
  oc.check(observed == expected, "observed transitivity matches the q mod 4 rule");
  if (!observed) {
    bool halves = std::all_of(sizes.begin(), sizes.end(), [&](u64 s) {
      return s == (ws.t.qm() + 1) / 2;
    });
    oc.check(halves, "intransitive orbits all have size (q^m+1)/2");
  }
}

// Deterministic order-r elements for the Zsigmondy checks: from a Sylow
// subgroup of the enumerated symplectic group when that is under cap, else
// from the cyclic group generated by rho (r always divides q^m + 1).
std::vector<std::pair<u64, MatQ>> zsigmondy_witness_elements(Workspace& ws, Outcome& oc) {
  const auto& fq = ws.t.fq();
  auto zr = zsigmondy_primes(ws.t.q(), 2 * ws.t.m());
  std::vector<std::pair<u64, MatQ>> out;
  if (zr.primes.empty()) {
    oc.confirm(fmt::format("q^{{2m}} - 1 = {}^{} - 1 has no primitive prime divisor; "
                           "check is vacuous",
                           ws.t.q(), 2 * ws.t.m()));
    return out;
  }
  const MatGroup* sp = ws.symplectic_group();
  for (const auto& zp : zr.primes) {
    if (sp != nullptr) {
      MatGroup r_sub = sylow(fq, *sp, zp.r);
      for (const auto& x : r_sub.elements) {
        if (element_order(fq, x) == r_sub.order()) {
          out.emplace_back(zp.r, mat_pow(fq, x, r_sub.order() / zp.r));
          break;
        }
      }
      oc.confirm(fmt::format("r = {}: witness of order r from a Sylow {}-subgroup of the "
                             "symplectic group",
                             zp.r, zp.r));
    } else {
      out.emplace_back(zp.r, mat_pow(fq, ws.rho, (ws.t.qm() + 1) / zp.r));
      oc.confirm(fmt::format("r = {}: witness of order r taken as a power of rho "
                             "(symplectic group over cap)",
                             zp.r));
    }
  }
  return out;
}

void check_zsig_irreducible(Workspace& ws, Outcome& oc) {
  const auto& fq = ws.t.fq();
  auto witnesses = zsigmondy_witness_elements(ws, oc);
  for (const auto& [r, sigma] : witnesses) {
    oc.check(element_order(fq, sigma) == r, fmt::format("witness element has order {}", r));
    PolyQ mp = minimal_polynomial(fq, sigma);
    oc.check(mp.degree() == ws.t.dim(),
             fmt::format("r = {}: minimal polynomial {} has degree 2m = {}", r,
                         poly_to_string(mp), ws.t.dim()));
    oc.check(poly_is_irreducible(fq, mp),
             fmt::format("r = {}: minimal polynomial is irreducible over F_q", r));
  }
}

void check_zsig_commutant(Workspace& ws, Outcome& oc) {
  const auto& fq = ws.t.fq();
  auto witnesses = zsigmondy_witness_elements(ws, oc);
  for (const auto& [r, sigma] : witnesses) {
    int cd = commutant_dimension(fq, sigma);
    int md = minimal_polynomial(fq, sigma).degree();
    oc.check(cd == ws.t.dim() && md == ws.t.dim(),
             fmt::format("r = {}: commutant dimension {} = minimal polynomial degree {} = 2m",
                         r, cd, md));
  }
}

void check_sp_centralizer(Workspace& ws, Outcome& oc) {
  const auto& fq = ws.t.fq();
  auto zr = zsigmondy_primes(ws.t.q(), 2 * ws.t.m());
  if (zr.primes.empty()) {
    oc.skip(fmt::format("no primitive prime divisor of q^{{2m}} - 1 for q = {}, 2m = {}",
                        ws.t.q(), 2 * ws.t.m()));
    return;
  }
  const MatGroup* sp = ws.symplectic_group();
  if (sp == nullptr) {
    oc.skip(ws.sp_skip_reason);
    return;
  }
  for (const auto& zp : zr.primes) {
    MatGroup r_sub = sylow(fq, *sp, zp.r);
    MatGroup c = centralizer_in(fq, *sp, r_sub);
    oc.check(c.order() == ws.t.qm() + 1,
             fmt::format("r = {}: centralizer has order q^m + 1 = {}", zp.r, ws.t.qm() + 1));
    oc.check(is_cyclic(fq, c), fmt::format("r = {}: centralizer is cyclic", zp.r));
  }
}

void check_sp_normalizer(Workspace& ws, Outcome& oc) {
  const auto& fq = ws.t.fq();
  auto zr = zsigmondy_primes(ws.t.q(), 2 * ws.t.m());
  if (zr.primes.empty()) {
    oc.skip(fmt::format("no primitive prime divisor of q^{{2m}} - 1 for q = {}, 2m = {}",
                        ws.t.q(), 2 * ws.t.m()));
    return;
  }
  const MatGroup* sp = ws.symplectic_group();
  if (sp == nullptr) {
    oc.skip(ws.sp_skip_reason);
    return;
  }
  const u64 m = static_cast<u64>(ws.t.m());
  for (const auto& zp : zr.primes) {
    MatGroup r_sub = sylow(fq, *sp, zp.r);
    MatGroup c = centralizer_in(fq, *sp, r_sub);
    MatGroup n = normalizer_in(fq, *sp, r_sub);
    oc.confirm(fmt::format("r = {}: normalizer order {}", zp.r, n.order()));
    oc.check(n.order() % c.order() == 0, "centralizer index divides the normalizer order");
    u64 quotient = n.order() / c.order();
    oc.check((2 * m) % quotient == 0,
             fmt::format("r = {}: N/C has order {} dividing 2m = {}", zp.r, quotient, 2 * m));
    if (ws.hypothesis_q1_or_m_even()) {
      oc.check(n.order() == 2 * m * (ws.t.qm() + 1),
               fmt::format("r = {}: normalizer order equals 2m(q^m+1) = {}", zp.r,
                           2 * m * (ws.t.qm() + 1)));
    }
  }
}

// Elements sigma with sigma^2 = -I, deterministically ordered, G first and
// then (when available) the enumerated symplectic group.
std::vector<MatQ> square_root_of_minus_identity_sample(Workspace& ws, size_t cap) {
  const auto& fq = ws.t.fq();
  const MatQ minus_id = ws.minus_identity();
  std::vector<MatQ> sample;
  std::set<MatQ> seen;
  auto harvest = [&](const MatGroup& g) {
    for (const auto& x : g.elements) {
      if (sample.size() >= cap) return;
      if (mat_mul(fq, x, x) == minus_id && seen.insert(x).second) sample.push_back(x);
    }
  };
  harvest(ws.metacyclic_group());
  if (const MatGroup* sp = ws.symplectic_group()) harvest(*sp);
  return sample;
}

void check_eig_decompose(Workspace& ws, Outcome& oc) {
  if (ws.t.q() % 4 != 1) {
    oc.skip(fmt::format("q = {} = 3 mod 4: F_q has no square root of -1", ws.t.q()));
    return;
  }
  const auto& fq = ws.t.fq();
  const int n = ws.t.dim();
  Fq i4 = i4_scalar(fq);
  auto sample = square_root_of_minus_identity_sample(ws, 40);
  oc.confirm(fmt::format("sampled {} elements with sigma^2 = -I", sample.size()));

  size_t subspaces_checked = 0;
  for (const auto& sigma : sample) {
    Subspace vplus = eigenspace(fq, sigma, i4);
    Subspace vminus = eigenspace(fq, sigma, fq.neg(i4));

    std::vector<Subspace> invariant;
    invariant.push_back(whole_space(n));
    SpreadAction act = map_spread(fq, sigma, ws.spr);
    if (act.stabilized) {
      for (u32 i = 0; i < act.perm.size(); ++i) {
        if (act.perm[i] == i) invariant.push_back(ws.spr.members[i]);
      }
    }
    for (int i = 0; i < n; ++i) {
      VecQ ei(static_cast<size_t>(n), 0);
      ei[static_cast<size_t>(i)] = 1;
      std::vector<VecQ> rows{ei, vec_mat(fq, ei, sigma)};
      invariant.push_back(rref_subspace(fq, rows, n));
    }

    for (const auto& u : invariant) {
      if (apply_to_subspace(fq, u, sigma) != u) {
        oc.fail("sampled subspace is not sigma-invariant");
        return;
      }
      Subspace uplus = intersect(fq, u, vplus);
      Subspace uminus = intersect(fq, u, vminus);
      if (uplus.dim() + uminus.dim() != u.dim()) {
        oc.fail(fmt::format("eigenspace dimensions {} + {} do not sum to dim U = {}",
                            uplus.dim(), uminus.dim(), u.dim()));
        return;
      }
      if (!is_totally_isotropic(fq, uplus, ws.gram) ||
          !is_totally_isotropic(fq, uminus, ws.gram)) {
        oc.fail("an eigenspace component is not totally isotropic");
        return;
      }
      ++subspaces_checked;
    }
  }
  oc.check(true, fmt::format("U = U_+ (+) U_- with totally isotropic parts for {} invariant "
                             "subspaces",
                             subspaces_checked));
}

void check_eig_dims(Workspace& ws, Outcome& oc) {
  if (ws.t.q() % 4 != 1) {
    oc.skip(fmt::format("q = {} = 3 mod 4: F_q has no square root of -1", ws.t.q()));
    return;
  }
  const auto& fq = ws.t.fq();
  const int m = ws.t.m();
  Fq i4 = i4_scalar(fq);
  auto sample = square_root_of_minus_identity_sample(ws, 40);

  size_t two_branch = 0, spread_branch = 0;
  for (const auto& sigma : sample) {
    Subspace vplus = eigenspace(fq, sigma, i4);
    Subspace vminus = eigenspace(fq, sigma, fq.neg(i4));
    if (vplus.dim() != m || vminus.dim() != m) {
      oc.fail(fmt::format("full-space eigenspaces have dimensions {} and {}, expected m = {}",
                          vplus.dim(), vminus.dim(), m));
      return;
    }
    SpreadAction act = map_spread(fq, sigma, ws.spr);
    if (!act.stabilized) continue;
    std::vector<u32> fixed;
    for (u32 i = 0; i < act.perm.size(); ++i) {
      if (act.perm[i] == i) fixed.push_back(i);
    }
    if (fixed.size() == 2) {
      ++two_branch;
      const Subspace& x = ws.spr.members[fixed[0]];
      const Subspace& y = ws.spr.members[fixed[1]];
      int xp = intersect(fq, x, vplus).dim();
      int xm = intersect(fq, x, vminus).dim();
      int ym = intersect(fq, y, vminus).dim();
      if (xp != ym || xp + xm != m) {
        oc.fail(fmt::format("paired fixed members disagree: dim X_+ = {}, dim X_- = {}, "
                            "dim Y_- = {}",
                            xp, xm, ym));
        return;
      }
    } else if (fixed.size() > 2) {
      ++spread_branch;
      if (m % 2 != 0) {
        oc.fail(fmt::format("{} fixed members although m = {} is odd", fixed.size(), m));
        return;
      }
      for (u32 i : fixed) {
        int zp = intersect(fq, ws.spr.members[i], vplus).dim();
        if (zp != m / 2) {
          oc.fail(fmt::format("fixed member {} has eigenpart dimension {}, expected m/2 = {}",
                              i, zp, m / 2));
          return;
        }
      }
    }
  }
  oc.check(true, fmt::format("eigenspace dimensions verified on {} samples "
                             "(2-fixed branch seen {} times, larger branch {} times)",
                             sample.size(), two_branch, spread_branch));
}

void check_fix_count(Workspace& ws, Outcome& oc) {
  if (ws.t.q() % 4 != 1) {
    oc.skip(fmt::format("q = {} = 3 mod 4: the fixed-count dichotomy needs q = 1 mod 4", ws.t.q()));
    return;
  }
  const auto& fq = ws.t.fq();
  const MatQ minus_id = ws.minus_identity();
  const MatGroup* sp = ws.symplectic_group();
  const MatGroup& scope_group = sp != nullptr ? *sp : ws.metacyclic_group();
  oc.confirm(sp != nullptr
                 ? fmt::format("scope: full symplectic group of order {}", sp->order())
                 : fmt::format("scope: G = <pi, rho> of order {} (symplectic group over cap)",
                               ws.metacyclic_group().order()));

  const u64 qhalf = ws.t.m() % 2 == 0
                        ? checked_pow(ws.t.q(), static_cast<u64>(ws.t.m() / 2)) + 1
                        : 0;
  std::map<u64, u64> branch_histogram;
  u64 examined = 0;
  for (const auto& sigma : scope_group.elements) {
    if (mat_mul(fq, sigma, sigma) != minus_id) continue;
    SpreadAction act = map_spread(fq, sigma, ws.spr);
    if (!act.stabilized) continue;  // outside the spread stabilizer
    ++examined;
    u64 fixed = 0;
    for (u32 i = 0; i < act.perm.size(); ++i) {
      if (act.perm[i] == i) ++fixed;
    }
    ++branch_histogram[fixed];
    bool ok = fixed == 2 || (ws.t.m() % 2 == 0 && fixed == qhalf);
    if (!ok) {
      oc.fail(fmt::format("sigma with sigma^2 = -I fixes {} members; allowed 2{}", fixed,
                          ws.t.m() % 2 == 0 ? fmt::format(" or q^{{m/2}}+1 = {}", qhalf) : ""));
      return;
    }
  }
  std::string hist;
  for (const auto& [k, v] : branch_histogram) {
    if (!hist.empty()) hist += ", ";
    hist += fmt::format("|fixed|={} x{}", k, v);
  }
  oc.check(true, fmt::format("dichotomy holds for all {} spread-stabilizing sigma with "
                             "sigma^2 = -I ({})",
                             examined, hist.empty() ? "none found" : hist));
}

void check_exception_q5(Workspace& ws, Outcome& oc) {
  if (!(ws.t.p() == 5 && ws.t.a() == 1 && ws.t.m() == 1)) {
    oc.skip("check applies to the parameter triple (5, 1, 1) only");
    return;
  }
  const auto& fq = ws.t.fq();
  const MatGroup* sp = ws.symplectic_group();
  if (sp == nullptr) {
    oc.skip(ws.sp_skip_reason);
    return;
  }
  auto subs = find_subgroups_of_order(fq, *sp, 24, ws.caps.max_subgroup_search);
  oc.check(!subs.empty(), fmt::format("found {} subgroups of order 24", subs.size()));
  for (size_t k = 0; k < subs.size(); ++k) {
    const MatGroup& h = subs[k];
    bool solvable = is_solvable(fq, h, ws.caps.max_group_order);
    StructureReport rep = structure_probe(fq, h);
    bool quaternion_sylow2 = rep.sylow2_order == 8 && !rep.sylow2_cyclic &&
                             rep.unique_involution_is_minus_identity;
    bool transitive = is_transitive_on_spread(fq, h, ws.spr);
    u64 stab = stabilizer(fq, h, ws.spr.members.front()).order();
    bool ok = solvable && quaternion_sylow2 && transitive && stab == 4;
    if (!ok) {
      oc.fail(fmt::format("subgroup {}: solvable={}, quaternion Sylow-2={}, transitive={}, "
                          "stabilizer order {}",
                          k, solvable, quaternion_sylow2, transitive, stab));
      return;
    }
  }
  oc.check(true, "every order-24 subgroup is solvable, has a unique involution with "
                 "quaternion Sylow 2-subgroup, and acts transitively with stabilizer "
                 "order 4");
}

void check_fermat_flag(Workspace& ws, Outcome& oc) {
  int m = ws.t.m();
  if ((m & (m - 1)) != 0) {
    oc.skip(fmt::format("m = {} is not a power of two", m));
    return;
  }
  int b = 0;
  while ((1 << b) < m) ++b;
  auto rep = fermat_exception_check(ws.t.q(), b);
  std::string factors;
  for (const auto& [r, e] : rep.factors) {
    if (!factors.empty()) factors += " * ";
    factors += e == 1 ? std::to_string(r) : fmt::format("{}^{}", r, e);
  }
  oc.confirm(fmt::format("q^m + 1 = {} = {}", rep.value, factors.empty() ? "1" : factors));
  oc.check(rep.all_odd_primes_primitive,
           "every odd prime divisor of q^m + 1 is a primitive divisor of q^{2m} - 1");
  oc.confirm(fmt::format("exceptional configuration q^m + 1 = 2 r^t with r = 2m + 1 a "
                         "Fermat prime: {}",
                         rep.fermat_exception ? "yes" : "no"));
}

// ---------------------------------------------------------------------------
// Registry and drivers
// ---------------------------------------------------------------------------

using CheckFn = void (*)(Workspace&, Outcome&);

const std::vector<std::pair<std::string, CheckFn>>& registry_impl() {
  static const std::vector<std::pair<std::string, CheckFn>> reg = {
      {"spread.valid", check_spread_valid},
      {"form.nondegenerate", check_form_nondegenerate},
      {"pi_rho.isometry", check_pi_rho_isometry},
      {"pi_rho.relation", check_pi_rho_relation},
      {"pi_rho.orders", check_pi_rho_orders},
      {"G.structure", check_g_structure},
      {"G.transitive", check_g_transitive},
      {"zsig.irreducible", check_zsig_irreducible},
      {"zsig.commutant", check_zsig_commutant},
      {"sp.centralizer", check_sp_centralizer},
      {"sp.normalizer", check_sp_normalizer},
      {"eig.decompose", check_eig_decompose},
      {"eig.dims", check_eig_dims},
      {"fix.count", check_fix_count},
      {"exception.q5", check_exception_q5},
      {"fermat.flag", check_fermat_flag},
  };
  return reg;
}

VerifyReport run_check_on_workspace(const std::string& id, Workspace& ws) {
  CheckFn fn = nullptr;
  for (const auto& [name, f] : registry_impl()) {
    if (name == id) {
      fn = f;
      break;
    }
  }
  if (fn == nullptr) throw std::invalid_argument("run_check: unknown check id '" + id + "'");

  VerifyReport rep;
  rep.check_id = id;
  rep.p = ws.t.p();
  rep.a = ws.t.a();
  rep.m = ws.t.m();

  auto start = std::chrono::steady_clock::now();
  Outcome oc;
  try {
    fn(ws, oc);
  } catch (const CapExceeded& e) {
    oc = Outcome{};
    oc.skip(e.what());
  }
  rep.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);

  if (oc.skipped) {
    rep.status = CheckStatus::skipped;
    rep.skip_reason = oc.skip_reason;
    rep.witnesses = oc.witnesses;
  } else {
    rep.status = oc.failed ? CheckStatus::fail : CheckStatus::pass;
    rep.witnesses = oc.witnesses;
  }
  return rep;
}

}  // namespace

const std::vector<std::string>& check_registry() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : registry_impl()) v.push_back(name);
    return v;
  }();
  return ids;
}

VerifyReport run_check(const std::string& id, const Tower& t, const Caps& caps) {
  Workspace ws(t, caps);
  return run_check_on_workspace(id, ws);
}

std::vector<VerifyReport> run_all(std::span<const std::array<int, 3>> ctxs, const Caps& caps) {
  std::vector<VerifyReport> out;
  for (const auto& [p, a, m] : ctxs) {
    Tower t = Tower::make(p, a, m, caps.field_size_cap);
    Workspace ws(t, caps);
    for (const auto& id : check_registry()) {
      out.push_back(run_check_on_workspace(id, ws));
    }
  }
  return out;
}

bool any_fail(std::span<const VerifyReport> reports) {
  return std::any_of(reports.begin(), reports.end(),
                     [](const VerifyReport& r) { return r.status == CheckStatus::fail; });
}

std::string status_to_string(const VerifyReport& r) {
  switch (r.status) {
    case CheckStatus::pass:
      return "pass";
    case CheckStatus::fail:
      return "fail";
    case CheckStatus::skipped:
      return "skipped: " + r.skip_reason;
  }
  return "unknown";
}

std::string reports_to_json(std::span<const VerifyReport> reports,
                            std::span<const std::array<int, 3>> params,
                            bool include_timings) {
  nlohmann::json root;
  root["version"] = "1";
  root["params"] = nlohmann::json::array();
  for (const auto& [p, a, m] : params) {
    root["params"].push_back(nlohmann::json::array({p, a, m}));
  }
  root["checks"] = nlohmann::json::array();
  for (const auto& r : reports) {
    nlohmann::json c;
    c["id"] = r.check_id;
    c["p"] = r.p;
    c["a"] = r.a;
    c["m"] = r.m;
    c["status"] = status_to_string(r);
    c["witnesses"] = r.witnesses;
    c["elapsed_ms"] = include_timings ? r.elapsed.count() : 0;
    root["checks"].push_back(std::move(c));
  }
  return root.dump(2) + "\n";
}

std::vector<std::array<int, 3>> default_ctx_matrix() {
  return {{3, 1, 1}, {5, 1, 1}, {7, 1, 1}, {11, 1, 1},
          {13, 1, 1}, {3, 1, 2}, {5, 1, 2}, {3, 2, 1}};
}

}  // namespace symspread
