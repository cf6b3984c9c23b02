#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "symspread/gf.hpp"

namespace symspread {

/// Row vector of 2m scalar codes over F_q.
using VecQ = std::vector<Fq>;

/// Square matrix over F_q, row-major. Matrices act on row vectors from the
/// right: the image of v under M is v*M, and the matrix of "apply M then N"
/// is M*N.
struct MatQ {
  int n = 0;
  std::vector<Fq> e;

  static MatQ identity(int n);
  static MatQ zeros(int n);
  static MatQ scalar(int n, Fq c);

  Fq operator()(int i, int j) const { return e[static_cast<size_t>(i) * n + j]; }
  Fq& operator()(int i, int j) { return e[static_cast<size_t>(i) * n + j]; }

  friend bool operator==(const MatQ&, const MatQ&) = default;
  friend auto operator<=>(const MatQ&, const MatQ&) = default;
};

struct MatQHash {
  size_t operator()(const MatQ& m) const noexcept;
};

/// Subspace of F_q^ambient held as a canonical reduced-row-echelon basis.
/// Two Subspace values are equal as sets of vectors iff they compare equal.
struct Subspace {
  int ambient = 0;
  int rows = 0;
  std::vector<Fq> basis;  // rows x ambient, row-major

  int dim() const { return rows; }

  friend bool operator==(const Subspace&, const Subspace&) = default;
  friend auto operator<=>(const Subspace&, const Subspace&) = default;
};

MatQ mat_mul(const FqTables& fq, const MatQ& x, const MatQ& y);
MatQ mat_add(const FqTables& fq, const MatQ& x, const MatQ& y);
MatQ mat_sub(const FqTables& fq, const MatQ& x, const MatQ& y);
MatQ mat_neg(const FqTables& fq, const MatQ& x);
MatQ mat_transpose(const MatQ& x);
MatQ mat_pow(const FqTables& fq, MatQ x, u64 e);
std::optional<MatQ> mat_inverse(const FqTables& fq, const MatQ& x);
VecQ vec_mat(const FqTables& fq, std::span<const Fq> v, const MatQ& m);
bool mat_is_identity(const MatQ& x);
/// Multiplicative order; throws std::domain_error on a singular matrix.
u64 mat_order(const FqTables& fq, const MatQ& x);

/// In-place reduced row echelon form of a rows x cols matrix; returns the
/// rank and shrinks the storage to the nonzero rows.
int rref_in_place(const FqTables& fq, std::vector<Fq>& a, int rows, int cols);

Subspace zero_subspace(int ambient);
Subspace whole_space(int ambient);
Subspace rref_subspace(const FqTables& fq, std::span<const VecQ> vectors, int ambient);
Subspace subspace_from_rows(const FqTables& fq, std::vector<Fq> flat, int rows, int ambient);
bool subspace_contains(const FqTables& fq, const Subspace& u, std::span<const Fq> v);
Subspace subspace_sum(const FqTables& fq, const Subspace& x, const Subspace& y);
/// Exact intersection; throws std::invalid_argument on ambient mismatch.
Subspace intersect(const FqTables& fq, const Subspace& x, const Subspace& y);
/// Canonical image subspace {v*M : v in U}.
Subspace apply_to_subspace(const FqTables& fq, const Subspace& u, const MatQ& m);
/// {v : v*M = c*v}, canonical.
Subspace eigenspace(const FqTables& fq, const MatQ& m, Fq c);
/// {v : v*M = 0}, canonical.
Subspace left_kernel(const FqTables& fq, const MatQ& m);
/// All vectors of the subspace, in deterministic order (for desk-scale oracles).
std::vector<VecQ> subspace_vectors(const FqTables& fq, const Subspace& u);

/// Dense polynomial over F_q, lowest degree first; empty vector is zero.
struct PolyQ {
  std::vector<Fq> c;
  int degree() const { return static_cast<int>(c.size()) - 1; }
  friend bool operator==(const PolyQ&, const PolyQ&) = default;
};

PolyQ poly_trim(PolyQ f);
PolyQ poly_add(const FqTables& fq, const PolyQ& x, const PolyQ& y);
PolyQ poly_mul(const FqTables& fq, const PolyQ& x, const PolyQ& y);
/// (quotient, remainder); divisor must be nonzero.
std::pair<PolyQ, PolyQ> poly_divmod(const FqTables& fq, const PolyQ& x, const PolyQ& y);
PolyQ poly_monic(const FqTables& fq, PolyQ f);
PolyQ poly_gcd(const FqTables& fq, PolyQ x, PolyQ y);
PolyQ poly_lcm(const FqTables& fq, const PolyQ& x, const PolyQ& y);
MatQ poly_eval_matrix(const FqTables& fq, const PolyQ& f, const MatQ& m);
bool poly_is_irreducible(const FqTables& fq, const PolyQ& f);
/// Human-readable form with coefficients printed as scalar codes.
std::string poly_to_string(const PolyQ& f);

/// Monic least-degree polynomial s with s(M) = 0.
PolyQ minimal_polynomial(const FqTables& fq, const MatQ& m);

/// Dimension over F_q of {X : XM = MX}.
int commutant_dimension(const FqTables& fq, const MatQ& m);

/// Canonical square root of -1 in F_q (smaller code of the two).
/// Throws std::domain_error unless q = 1 mod 4.
Fq i4_scalar(const FqTables& fq);

}  // namespace symspread
