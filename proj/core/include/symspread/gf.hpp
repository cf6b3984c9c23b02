#pragma once

#include <optional>
#include <span>
#include <vector>

#include "symspread/common.hpp"

namespace symspread {

/// Code of an element of the middle field F_q (q = p^a). Codes are assigned
/// by sorting the q subfield elements of the tower by their integer encoding,
/// so code 0 is zero, code 1 is one, and for a = 1 the code of a prime-field
/// element is its residue.
using Fq = u16;

/// Element of the top field F_{q^{2m}}: 2am residues mod p, lowest degree
/// first, in the polynomial basis of the tower modulus.
struct FFElem {
  std::vector<u8> coeffs;
  friend bool operator==(const FFElem&, const FFElem&) = default;
};

/// Table-driven arithmetic on F_q scalar codes. Built once per tower;
/// immutable afterwards, safe to share across threads.
class FqTables {
 public:
  u64 q() const { return q_; }
  int p() const { return p_; }
  int a() const { return a_; }

  Fq add(Fq x, Fq y) const { return add_[static_cast<size_t>(x) * q_ + y]; }
  Fq mul(Fq x, Fq y) const { return mul_[static_cast<size_t>(x) * q_ + y]; }
  Fq neg(Fq x) const { return neg_[x]; }
  Fq sub(Fq x, Fq y) const { return add(x, neg(y)); }
  Fq inv(Fq x) const;  // throws std::domain_error on zero
  Fq div(Fq x, Fq y) const { return mul(x, inv(y)); }

  /// Prime-field residue r (mod p) as a scalar code.
  Fq from_residue(u64 r) const { return static_cast<Fq>(r % p_); }

  /// Expansion of a scalar over F_p: the `a` digits of the code in the
  /// canonical F_p-basis of F_q. For a = 1 this is just {code}.
  std::span<const u8> digits(Fq x) const;
  /// Inverse of digits().
  Fq from_digits(std::span<const u8> d) const;

 private:
  friend class Tower;
  u64 q_ = 0;
  int p_ = 0, a_ = 0;
  std::vector<Fq> add_, mul_, neg_, inv_;
  std::vector<u8> digits_;       // a entries per code
  std::vector<Fq> from_digits_;  // indexed by base-p digit tuple
};

/// The field tower F_p < F_q < F_{q^m} < F_{q^{2m}} with exact arithmetic.
///
/// Construction is fully deterministic: the modulus is the lexicographically
/// smallest monic irreducible polynomial of degree 2am over F_p (coefficients
/// compared low degree first), and omega is the full-order element with the
/// lexicographically smallest coefficient vector. Multiplication and
/// inversion run through a discrete-log table base omega, so the whole field
/// must fit the configured cap (default 2^20 elements).
///
/// Immutable after make(); all member functions are const and thread-safe.
class Tower {
 public:
  static constexpr u64 kDefaultFieldCap = u64{1} << 20;

  static Tower make(int p, int a, int m, u64 field_size_cap = kDefaultFieldCap);

  int p() const { return p_; }
  int a() const { return a_; }
  int m() const { return m_; }
  u64 q() const { return q_; }
  u64 qm() const { return qm_; }       // q^m
  u64 size() const { return size_; }   // q^{2m} = p^{2am}
  int deg() const { return deg_; }     // 2am, degree over F_p
  int dim() const { return 2 * m_; }   // coordinate dimension over F_q

  /// Monic modulus over F_p, deg()+1 coefficients, low degree first.
  const std::vector<u8>& modulus() const { return modulus_; }

  FFElem zero() const;
  FFElem one() const;
  const FFElem& omega() const { return omega_; }
  const FFElem& epsilon() const { return epsilon_; }
  const FFElem& lambda() const { return lambda_; }
  const FFElem& mu() const { return mu_; }
  FFElem omega_pow(u64 k) const;
  FFElem from_base_int(u64 c) const;  // prime-subfield embedding of c mod p

  bool is_zero(const FFElem& x) const;
  FFElem add(const FFElem& x, const FFElem& y) const;
  FFElem sub(const FFElem& x, const FFElem& y) const;
  FFElem neg(const FFElem& x) const;
  FFElem mul(const FFElem& x, const FFElem& y) const;
  FFElem inv(const FFElem& x) const;  // throws std::domain_error on zero
  FFElem pow(const FFElem& x, u64 e) const;

  /// Integer encoding sum coeffs[i] * p^i; a bijection onto [0, size()).
  u32 encode(const FFElem& x) const;
  FFElem decode(u32 index) const;

  /// Discrete log base omega; nullopt for zero.
  std::optional<u64> dlog(const FFElem& x) const;
  /// Multiplicative order; throws std::domain_error on zero.
  u64 mult_order(const FFElem& x) const;

  /// x^{q^k}; k is reduced mod 2m, so frobenius(x, 2m) == x.
  FFElem frobenius(const FFElem& x, int k) const;

  /// Relative trace onto F_q: sum of x^{q^i} for 0 <= i < 2m.
  FFElem trace_to_base(const FFElem& x) const;

  /// The q^d elements fixed by x -> x^{q^d}, sorted by encoding.
  /// d must divide 2m.
  std::vector<FFElem> subfield_elements(int d) const;

  /// Scalar layer: F_q as codes with table arithmetic.
  const FqTables& fq() const { return fq_; }
  bool in_base_field(const FFElem& x) const;
  Fq scalar_from_elem(const FFElem& x) const;  // throws if x not in F_q
  FFElem elem_from_scalar(Fq c) const;

  /// Coordinates in the power basis 1, omega, ..., omega^{2m-1} over F_q.
  std::vector<Fq> coords(const FFElem& x) const;
  FFElem from_coords(std::span<const Fq> v) const;

  /// Raw tables, exposed for determinism checks.
  const std::vector<u32>& dlog_table() const { return dlog_; }
  const std::vector<u32>& antilog_table() const { return antilog_; }

 private:
  Tower() = default;

  int p_ = 0, a_ = 0, m_ = 0;
  u64 q_ = 0, qm_ = 0, size_ = 0;
  int deg_ = 0;
  std::vector<u8> modulus_;
  FFElem omega_, epsilon_, lambda_, mu_;
  std::vector<u32> dlog_;     // encoding -> exponent (entry for 0 unused)
  std::vector<u32> antilog_;  // exponent -> encoding, size()-1 entries
  FqTables fq_;
  std::vector<u32> fq_encodings_;  // code -> tower encoding
  // power-basis transition: column J = j*a+k holds the F_p coefficients of
  // omega^j * s^k where s generates F_q*; inverse maps tower coefficients
  // to power-basis digit vectors.
  std::vector<u8> basis_inv_;  // deg x deg, row-major, over F_p

  FFElem mul_poly(const FFElem& x, const FFElem& y) const;
  void build_tables();
  void build_scalar_layer();
};

}  // namespace symspread
