#pragma once

#include <map>
#include <span>
#include <vector>

#include "symspread/gf.hpp"
#include "symspread/linalg.hpp"

namespace symspread {

constexpr u64 kDefaultGroupOrderCap = 200'000;
constexpr u64 kDefaultSubgroupSearchCap = 200;

/// Finite matrix group held as an explicit, deduplicated element set. The
/// element list is sorted by the canonical byte encoding of the entries, so
/// equal groups compare equal and iteration order is reproducible. Immutable
/// once built.
struct MatGroup {
  std::vector<MatQ> elements;    // sorted ascending
  std::vector<MatQ> generators;  // subsequence that generates

  u64 order() const { return elements.size(); }
  int dim() const { return elements.empty() ? 0 : elements.front().n; }
  bool contains(const MatQ& x) const;
  bool is_subgroup_of(const MatGroup& g) const;

  friend bool operator==(const MatGroup& x, const MatGroup& y) {
    return x.elements == y.elements;
  }
};

/// Breadth-first product saturation of the generated group. Throws
/// CapExceeded (with the partial size reached) when the closure would pass
/// `cap`; throws std::invalid_argument on a singular generator.
MatGroup closure(const FqTables& fq, std::vector<MatQ> gens, u64 cap = kDefaultGroupOrderCap);

/// Wraps an explicit element set (assumed closed) as a MatGroup.
MatGroup group_from_elements(std::vector<MatQ> elems);

/// Greedy small generating subset, scanning elements in canonical order.
std::vector<MatQ> small_generating_set(const FqTables& fq, const MatGroup& g, u64 cap);

/// Matrices of x -> lambda * x^q and x -> mu * x on the power basis.
MatQ build_pi(const Tower& t);
MatQ build_rho(const Tower& t);

u64 element_order(const FqTables& fq, const MatQ& x);

/// Orbit of a subspace under the group generated by `gens`, deduplicated by
/// canonical basis, in breadth-first discovery order.
std::vector<Subspace> orbit_of_subspace(const FqTables& fq, std::span<const MatQ> gens,
                                        const Subspace& u);

/// Setwise stabilizer {x in g : U x = U}.
MatGroup stabilizer(const FqTables& fq, const MatGroup& g, const Subspace& u);

/// Derived subgroup as the normal closure of generator commutators.
MatGroup commutator_subgroup(const FqTables& fq, const MatGroup& g,
                             u64 cap = kDefaultGroupOrderCap);

/// Successive commutator subgroups starting from g, until stabilization.
std::vector<MatGroup> derived_series(const FqTables& fq, const MatGroup& g,
                                     u64 cap = kDefaultGroupOrderCap);

bool is_solvable(const FqTables& fq, const MatGroup& g, u64 cap = kDefaultGroupOrderCap);

/// A Sylow r-subgroup, grown from a maximal-order r-element by repeatedly
/// adjoining normalizing r-elements; the result is certified against the
/// r-part of |g|. Throws std::invalid_argument if r does not divide |g|.
MatGroup sylow(const FqTables& fq, const MatGroup& g, u64 r);

/// Exact centralizer / normalizer of h in g by element filtering.
/// h must be contained in g.
MatGroup centralizer_in(const FqTables& fq, const MatGroup& g, const MatGroup& h);
MatGroup normalizer_in(const FqTables& fq, const MatGroup& g, const MatGroup& h);

bool is_cyclic(const FqTables& fq, const MatGroup& g);

struct StructureReport {
  u64 order = 0;
  std::vector<MatQ> involutions;
  bool unique_involution_is_minus_identity = false;
  u64 sylow2_order = 1;
  bool sylow2_cyclic = true;  // vacuously true for odd order
  bool cyclic = false;
  std::map<u64, u64> order_histogram;
  // one entry per distinct order-4 cyclic subgroup, keyed by its smallest
  // generator, with the order of its normalizer in the group
  std::vector<std::pair<MatQ, u64>> order4_normalizers;
};

StructureReport structure_probe(const FqTables& fq, const MatGroup& g);

/// All subgroups of the given order, up to equality (not conjugacy), found by
/// saturating single-element extensions over the subgroup lattice. Requires
/// |g| <= search_cap and n dividing |g|.
std::vector<MatGroup> find_subgroups_of_order(const FqTables& fq, const MatGroup& g, u64 n,
                                              u64 search_cap = kDefaultSubgroupSearchCap);

}  // namespace symspread
