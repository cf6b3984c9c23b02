#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "symspread/gf.hpp"
#include "symspread/grp.hpp"
#include "symspread/linalg.hpp"
#include "symspread/symplectic.hpp"

namespace symspread {

/// Complete symplectic spread: q^m + 1 totally isotropic m-dimensional
/// subspaces of F_q^{2m}, pairwise intersecting in zero and jointly covering
/// the space. Member i is the canonical subspace of omega^i * F_{q^m}, so the
/// index doubles as the residue class of the defining exponent mod q^m + 1.
struct Spread {
  int p = 0, a = 0, m = 0;
  u64 q = 0;
  std::vector<Subspace> members;
};

Spread build_spread(const Tower& t);

struct SpreadValidation {
  bool ok = true;
  std::vector<std::string> confirmations;  // one line per verified invariant
  std::string failed_invariant;            // set on the first failure
  std::string witness;                     // counterexample description
};

/// Checks member count, per-member dimension and isotropy, pairwise trivial
/// intersection, and the covering count; stops at the first counterexample.
SpreadValidation validate_spread(const FqTables& fq, const Spread& s, const GramForm& form);

struct SpreadAction {
  bool stabilized = false;
  std::vector<u32> perm;   // member index -> image index, when stabilized
  int witness_member = -1; // a member mapped off the spread, otherwise
};

/// The permutation of member indices induced by an invertible M, or the
/// "not stabilized" outcome with a witness member.
SpreadAction map_spread(const FqTables& fq, const MatQ& m, const Spread& s);

/// Fixed points of the induced permutation. Throws std::invalid_argument if
/// M does not stabilize the spread.
std::vector<u32> fixed_members(const FqTables& fq, const MatQ& m, const Spread& s);

/// Whether the group's orbit of member 0 is the whole spread. Every
/// generator must stabilize the spread; otherwise throws
/// std::invalid_argument naming a witness member.
bool is_transitive_on_spread(const FqTables& fq, const MatGroup& g, const Spread& s);

/// Orbit sizes of the member-index partition under the group generators
/// (sorted ascending); a convenience over the induced permutations.
std::vector<u64> spread_orbit_sizes(const FqTables& fq, const MatGroup& g, const Spread& s);

/// Text format: header "p a m q", then one line per member holding the member
/// index followed by its m basis rows; each row is 2m coordinates and each
/// coordinate is the a-digit F_p expansion of an F_q scalar, digits joined by
/// commas. Bit-exact across runs.
void write_spread(std::ostream& os, const Tower& t, const Spread& s);
std::string spread_to_string(const Tower& t, const Spread& s);

struct SpreadFileHeader {
  int p = 0, a = 0, m = 0;
  u64 q = 0;
};

/// Parses just the header line (for constructing the matching tower).
SpreadFileHeader read_spread_header(std::istream& is);

/// Parses a full spread file against a tower with matching parameters.
/// Subspace rows are canonicalized on read. Throws std::invalid_argument on
/// malformed input or parameter mismatch.
Spread read_spread(const Tower& t, std::istream& is);

}  // namespace symspread
