#include "symspread/grp.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace symspread {

bool MatGroup::contains(const MatQ& x) const {
  return std::binary_search(elements.begin(), elements.end(), x);
}

bool MatGroup::is_subgroup_of(const MatGroup& g) const {
  return std::all_of(elements.begin(), elements.end(),
                     [&](const MatQ& x) { return g.contains(x); });
}

MatGroup closure(const FqTables& fq, std::vector<MatQ> gens, u64 cap) {
  if (gens.empty()) throw std::invalid_argument("closure: no generators");
  const int n = gens.front().n;
  for (const auto& g : gens) {
    if (g.n != n) throw std::invalid_argument("closure: generator dimension mismatch");
    if (!mat_inverse(fq, g)) throw std::invalid_argument("closure: singular generator");
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());

  std::unordered_set<MatQ, MatQHash> seen;
  std::deque<MatQ> todo;
  MatQ id = MatQ::identity(n);
  seen.insert(id);
  todo.push_back(id);
  while (!todo.empty()) {
    MatQ cur = std::move(todo.front());
    todo.pop_front();
    for (const auto& g : gens) {
      MatQ prod = mat_mul(fq, cur, g);
      if (seen.insert(prod).second) {
        if (seen.size() > cap) {
          throw CapExceeded("closure: group order exceeds cap " + std::to_string(cap) +
                                " (reached " + std::to_string(seen.size()) + " elements)",
                            seen.size(), cap);
        }
        todo.push_back(std::move(prod));
      }
    }
  }

  MatGroup out;
  out.elements.assign(seen.begin(), seen.end());
  std::sort(out.elements.begin(), out.elements.end());
  out.generators = std::move(gens);
  return out;
}

MatGroup group_from_elements(std::vector<MatQ> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  MatGroup out;
  out.generators = elems;
  out.elements = std::move(elems);
  return out;
}

std::vector<MatQ> small_generating_set(const FqTables& fq, const MatGroup& g, u64 cap) {
  std::vector<MatQ> gens;
  if (g.order() <= 1) return gens;
  std::unordered_set<MatQ, MatQHash> have;
  have.insert(MatQ::identity(g.dim()));
  for (const auto& e : g.elements) {
    if (have.count(e)) continue;
    gens.push_back(e);
    MatGroup h = closure(fq, gens, cap);
    have.clear();
    have.insert(h.elements.begin(), h.elements.end());
    if (h.order() == g.order()) break;
  }
  return gens;
}

namespace {

MatQ mat_of_field_map(const Tower& t, const FFElem& scale, int frob_k) {
  const int n = t.dim();
  MatQ m = MatQ::zeros(n);
  for (int i = 0; i < n; ++i) {
    FFElem image = t.mul(scale, t.frobenius(t.omega_pow(static_cast<u64>(i)), frob_k));
    std::vector<Fq> row = t.coords(image);
    for (int j = 0; j < n; ++j) m(i, j) = row[static_cast<size_t>(j)];
  }
  return m;
}

}  // namespace

MatQ build_pi(const Tower& t) { return mat_of_field_map(t, t.lambda(), 1); }

MatQ build_rho(const Tower& t) { return mat_of_field_map(t, t.mu(), 0); }

u64 element_order(const FqTables& fq, const MatQ& x) { return mat_order(fq, x); }

std::vector<Subspace> orbit_of_subspace(const FqTables& fq, std::span<const MatQ> gens,
                                        const Subspace& u) {
  std::vector<Subspace> orbit;
  std::set<Subspace> seen;
  std::deque<Subspace> todo;
  seen.insert(u);
  orbit.push_back(u);
  todo.push_back(u);
  while (!todo.empty()) {
    Subspace cur = std::move(todo.front());
    todo.pop_front();
    for (const auto& g : gens) {
      Subspace img = apply_to_subspace(fq, cur, g);
      if (seen.insert(img).second) {
        orbit.push_back(img);
        todo.push_back(img);
      }
    }
  }
  return orbit;
}

MatGroup stabilizer(const FqTables& fq, const MatGroup& g, const Subspace& u) {
  std::vector<MatQ> keep;
  for (const auto& x : g.elements) {
    if (apply_to_subspace(fq, u, x) == u) keep.push_back(x);
  }
  return group_from_elements(std::move(keep));
}

namespace {

std::vector<MatQ> working_generators(const FqTables& fq, const MatGroup& g, u64 cap) {
  if (g.generators.size() <= 16) return g.generators;
  return small_generating_set(fq, g, cap);
}

}  // namespace

MatGroup commutator_subgroup(const FqTables& fq, const MatGroup& g, u64 cap) {
  const int n = g.dim();
  std::vector<MatQ> gens_g = working_generators(fq, g, cap);
  std::set<MatQ> comms;
  for (const auto& x : gens_g) {
    MatQ xi = *mat_inverse(fq, x);
    for (const auto& y : gens_g) {
      MatQ yi = *mat_inverse(fq, y);
      MatQ c = mat_mul(fq, mat_mul(fq, xi, yi), mat_mul(fq, x, y));
      if (!mat_is_identity(c)) comms.insert(std::move(c));
    }
  }
  if (comms.empty()) return group_from_elements({MatQ::identity(n)});

  std::vector<MatQ> hgens(comms.begin(), comms.end());
  MatGroup h = closure(fq, hgens, cap);
  // Normal closure: conjugates of the derived generators must stay inside.
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& x : gens_g) {
      MatQ xi = *mat_inverse(fq, x);
      for (size_t k = 0; k < hgens.size(); ++k) {
        MatQ c = mat_mul(fq, mat_mul(fq, xi, hgens[k]), x);
        if (!h.contains(c)) {
          hgens.push_back(std::move(c));
          h = closure(fq, hgens, cap);
          grew = true;
        }
      }
    }
  }
  return h;
}

std::vector<MatGroup> derived_series(const FqTables& fq, const MatGroup& g, u64 cap) {
  std::vector<MatGroup> series{g};
  while (true) {
    const MatGroup& cur = series.back();
    if (cur.order() == 1) break;
    MatGroup next = commutator_subgroup(fq, cur, cap);
    if (next.order() == cur.order()) break;  // perfect, series stabilized
    series.push_back(std::move(next));
  }
  return series;
}

bool is_solvable(const FqTables& fq, const MatGroup& g, u64 cap) {
  return derived_series(fq, g, cap).back().order() == 1;
}

MatGroup sylow(const FqTables& fq, const MatGroup& g, u64 r) {
  if (r < 2) throw std::invalid_argument("sylow: r must be a prime");
  if (g.order() % r != 0) {
    throw std::invalid_argument("sylow: r = " + std::to_string(r) +
                                " does not divide the group order " +
                                std::to_string(g.order()));
  }
  u64 rpart = 1;
  u64 rest = g.order();
  while (rest % r == 0) {
    rest /= r;
    rpart *= r;
  }

  // All elements of r-power order, in canonical order; orders cached.
  std::vector<std::pair<MatQ, u64>> r_elements;
  for (const auto& x : g.elements) {
    u64 ord = element_order(fq, x);
    u64 t = ord;
    while (t % r == 0) t /= r;
    if (t == 1 && ord > 1) r_elements.emplace_back(x, ord);
  }

  u64 best_order = 0;
  const MatQ* seed = nullptr;
  for (const auto& [x, ord] : r_elements) {
    if (ord > best_order) {
      best_order = ord;
      seed = &x;
    }
  }
  if (seed == nullptr) throw std::logic_error("sylow: no r-element found");

  std::vector<MatQ> pgens{*seed};
  MatGroup p = closure(fq, pgens, rpart);
  while (p.order() < rpart) {
    bool extended = false;
    for (const auto& [x, ord] : r_elements) {
      if (p.contains(x)) continue;
      MatQ xi = *mat_inverse(fq, x);
      bool normalizes = true;
      for (const auto& s : pgens) {
        if (!p.contains(mat_mul(fq, mat_mul(fq, xi, s), x))) {
          normalizes = false;
          break;
        }
      }
      if (!normalizes) continue;
      pgens.push_back(x);
      p = closure(fq, pgens, rpart);
      extended = true;
      break;
    }
    if (!extended) throw std::logic_error("sylow: greedy extension stalled");
  }
  if (p.order() != rpart) throw std::logic_error("sylow: order certification failed");
  return p;
}

MatGroup centralizer_in(const FqTables& fq, const MatGroup& g, const MatGroup& h) {
  if (!h.is_subgroup_of(g)) {
    throw std::invalid_argument("centralizer_in: h is not contained in g");
  }
  std::vector<MatQ> hgens = working_generators(fq, h, g.order());
  std::vector<MatQ> keep;
  for (const auto& x : g.elements) {
    bool commutes = true;
    for (const auto& s : hgens) {
      if (mat_mul(fq, x, s) != mat_mul(fq, s, x)) {
        commutes = false;
        break;
      }
    }
    if (commutes) keep.push_back(x);
  }
  return group_from_elements(std::move(keep));
}

MatGroup normalizer_in(const FqTables& fq, const MatGroup& g, const MatGroup& h) {
  if (!h.is_subgroup_of(g)) {
    throw std::invalid_argument("normalizer_in: h is not contained in g");
  }
  std::vector<MatQ> hgens = working_generators(fq, h, g.order());
  std::vector<MatQ> keep;
  for (const auto& x : g.elements) {
    MatQ xi = *mat_inverse(fq, x);
    bool normalizes = true;
    for (const auto& s : hgens) {
      if (!h.contains(mat_mul(fq, mat_mul(fq, xi, s), x))) {
        normalizes = false;
        break;
      }
    }
    if (normalizes) keep.push_back(x);
  }
  return group_from_elements(std::move(keep));
}

bool is_cyclic(const FqTables& fq, const MatGroup& g) {
  for (const auto& x : g.elements) {
    if (element_order(fq, x) == g.order()) return true;
  }
  return false;
}

StructureReport structure_probe(const FqTables& fq, const MatGroup& g) {
  StructureReport rep;
  rep.order = g.order();

  std::vector<u64> orders;
  orders.reserve(g.elements.size());
  for (const auto& x : g.elements) {
    u64 ord = element_order(fq, x);
    orders.push_back(ord);
    ++rep.order_histogram[ord];
    if (ord == 2) rep.involutions.push_back(x);
  }
  const MatQ minus_id = mat_neg(fq, MatQ::identity(g.dim()));
  rep.unique_involution_is_minus_identity =
      rep.involutions.size() == 1 && rep.involutions.front() == minus_id;
  rep.cyclic = rep.order_histogram.count(rep.order) > 0;

  if (rep.order % 2 == 0) {
    MatGroup s2 = sylow(fq, g, 2);
    rep.sylow2_order = s2.order();
    rep.sylow2_cyclic = is_cyclic(fq, s2);
  }

  std::set<std::vector<MatQ>> seen4;
  for (size_t i = 0; i < g.elements.size(); ++i) {
    if (orders[i] != 4) continue;
    MatGroup y = closure(fq, {g.elements[i]}, 4);
    if (seen4.insert(y.elements).second) {
      MatQ key = y.elements.front();
      for (const auto& e : y.elements) {
        if (element_order(fq, e) == 4) {
          key = e;
          break;
        }
      }
      rep.order4_normalizers.emplace_back(key, normalizer_in(fq, g, y).order());
    }
  }
  std::sort(rep.order4_normalizers.begin(), rep.order4_normalizers.end());
  return rep;
}

std::vector<MatGroup> find_subgroups_of_order(const FqTables& fq, const MatGroup& g, u64 n,
                                              u64 search_cap) {
  if (g.order() > search_cap) {
    throw CapExceeded("find_subgroups_of_order: group order " + std::to_string(g.order()) +
                          " exceeds the subgroup-search cap " + std::to_string(search_cap),
                      g.order(), search_cap);
  }
  if (n == 0 || g.order() % n != 0) {
    throw std::invalid_argument("find_subgroups_of_order: n must divide the group order");
  }

  struct Node {
    MatGroup group;
    std::vector<MatQ> gens;
  };
  std::set<std::vector<MatQ>> seen;
  std::vector<MatGroup> results;
  std::deque<Node> frontier;

  MatGroup trivial = group_from_elements({MatQ::identity(g.dim())});
  seen.insert(trivial.elements);
  if (n == 1) return {trivial};
  frontier.push_back({trivial, {}});

  while (!frontier.empty()) {
    Node cur = std::move(frontier.front());
    frontier.pop_front();
    for (const auto& e : g.elements) {
      if (mat_is_identity(e) || cur.group.contains(e)) continue;
      std::vector<MatQ> gens = cur.gens;
      gens.push_back(e);
      MatGroup k;
      try {
        k = closure(fq, gens, n);
      } catch (const CapExceeded&) {
        continue;  // blows past n, cannot sit inside an order-n subgroup
      }
      if (n % k.order() != 0) continue;
      if (!seen.insert(k.elements).second) continue;
      if (k.order() == n) {
        results.push_back(k);
      } else {
        frontier.push_back({std::move(k), std::move(gens)});
      }
    }
  }

  std::sort(results.begin(), results.end(),
            [](const MatGroup& x, const MatGroup& y) { return x.elements < y.elements; });
  return results;
}

}  // namespace symspread
