#pragma once

#include "symspread/gf.hpp"
#include "symspread/grp.hpp"
#include "symspread/linalg.hpp"

namespace symspread {

/// Non-degenerate alternating form on F_q^{2m}, as the Gram matrix of the
/// power basis 1, omega, ..., omega^{2m-1}. The constructor-side invariants
/// (zero diagonal, skew symmetry, invertibility) are verified by
/// gram_from_trace_form.
struct GramForm {
  MatQ gram;
};

/// Gram matrix of f(x, y) = Tr(epsilon * x * y^{q^m}) in the power basis.
GramForm gram_from_trace_form(const Tower& t);

/// f(u, v) for coordinate rows u, v.
Fq form_eval(const FqTables& fq, const GramForm& form, std::span<const Fq> u,
             std::span<const Fq> v);

/// Whether M preserves the form: f(uM, vM) = f(u, v) for all u, v.
bool is_isometry(const FqTables& fq, const MatQ& m, const GramForm& form);

/// The adjoint M* with f(M* u, v) = f(u, M v); M is an isometry iff
/// M* M = I.
MatQ adjoint(const FqTables& fq, const MatQ& m, const GramForm& form);

/// Whether the form vanishes identically on the subspace.
bool is_totally_isotropic(const FqTables& fq, const Subspace& u, const GramForm& form);

/// Symplectic transvection x -> x + c f(x, v) v.
MatQ transvection(const FqTables& fq, const GramForm& form, std::span<const Fq> v, Fq c);

/// |Sp(2m, q)| = q^{m^2} * prod_{i=1..m} (q^{2i} - 1); throws
/// std::overflow_error when it does not fit 64 bits.
u64 sp_order(u64 q, int m);

/// The full symplectic group of the trace form as an explicit group,
/// enumerated by closing the transvection generators; the result order is
/// certified against the classical formula. Throws CapExceeded when that
/// order exceeds `cap`.
MatGroup enumerate_sp(const Tower& t, u64 cap = kDefaultGroupOrderCap);

}  // namespace symspread
