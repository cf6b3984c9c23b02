#include "symspread/symplectic.hpp"

#include <set>
#include <stdexcept>

#include "symspread/zsig.hpp"

namespace symspread {

GramForm gram_from_trace_form(const Tower& t) {
  const int n = t.dim();
  MatQ g = MatQ::zeros(n);
  for (int i = 0; i < n; ++i) {
    FFElem bi = t.omega_pow(static_cast<u64>(i));
    for (int j = 0; j < n; ++j) {
      FFElem bj = t.omega_pow(static_cast<u64>(j));
      FFElem val = t.trace_to_base(t.mul(t.epsilon(), t.mul(bi, t.frobenius(bj, t.m()))));
      g(i, j) = t.scalar_from_elem(val);
    }
  }
  const auto& fq = t.fq();
  for (int i = 0; i < n; ++i) {
    if (g(i, i) != 0) throw std::logic_error("gram_from_trace_form: nonzero diagonal");
    for (int j = 0; j < n; ++j) {
      if (g(i, j) != fq.neg(g(j, i))) {
        throw std::logic_error("gram_from_trace_form: not skew-symmetric");
      }
    }
  }
  if (!mat_inverse(fq, g)) throw std::logic_error("gram_from_trace_form: degenerate form");
  return GramForm{std::move(g)};
}

Fq form_eval(const FqTables& fq, const GramForm& form, std::span<const Fq> u,
             std::span<const Fq> v) {
  const int n = form.gram.n;
  Fq acc = 0;
  for (int i = 0; i < n; ++i) {
    Fq ui = u[static_cast<size_t>(i)];
    if (ui == 0) continue;
    Fq row = 0;
    for (int j = 0; j < n; ++j) {
      row = fq.add(row, fq.mul(form.gram(i, j), v[static_cast<size_t>(j)]));
    }
    acc = fq.add(acc, fq.mul(ui, row));
  }
  return acc;
}

bool is_isometry(const FqTables& fq, const MatQ& m, const GramForm& form) {
  // Row-vector action: preserving the form means M G M^T = G.
  return mat_mul(fq, mat_mul(fq, m, form.gram), mat_transpose(m)) == form.gram;
}

MatQ adjoint(const FqTables& fq, const MatQ& m, const GramForm& form) {
  auto ginv = mat_inverse(fq, form.gram);
  if (!ginv) throw std::invalid_argument("adjoint: degenerate form");
  return mat_mul(fq, mat_mul(fq, form.gram, mat_transpose(m)), *ginv);
}

bool is_totally_isotropic(const FqTables& fq, const Subspace& u, const GramForm& form) {
  for (int i = 0; i < u.rows; ++i) {
    std::span<const Fq> ri{u.basis.data() + static_cast<size_t>(i) * u.ambient,
                           static_cast<size_t>(u.ambient)};
    for (int j = i; j < u.rows; ++j) {
      std::span<const Fq> rj{u.basis.data() + static_cast<size_t>(j) * u.ambient,
                             static_cast<size_t>(u.ambient)};
      if (form_eval(fq, form, ri, rj) != 0) return false;
    }
  }
  return true;
}

MatQ transvection(const FqTables& fq, const GramForm& form, std::span<const Fq> v, Fq c) {
  const int n = form.gram.n;
  MatQ m = MatQ::identity(n);
  for (int i = 0; i < n; ++i) {
    VecQ ei(static_cast<size_t>(n), 0);
    ei[static_cast<size_t>(i)] = 1;
    Fq f = fq.mul(c, form_eval(fq, form, ei, v));
    if (f == 0) continue;
    for (int j = 0; j < n; ++j) {
      m(i, j) = fq.add(m(i, j), fq.mul(f, v[static_cast<size_t>(j)]));
    }
  }
  return m;
}

u64 sp_order(u64 q, int m) {
  u64 order = 1;
  for (int i = 0; i < m * m; ++i) {
    if (order > UINT64_MAX / q) throw std::overflow_error("sp_order: overflow");
    order *= q;
  }
  for (int i = 1; i <= m; ++i) {
    u64 f = checked_pow(q, static_cast<u64>(2 * i)) - 1;
    if (order > UINT64_MAX / f) throw std::overflow_error("sp_order: overflow");
    order *= f;
  }
  return order;
}

MatGroup enumerate_sp(const Tower& t, u64 cap) {
  const auto& fq = t.fq();
  const int n = t.dim();
  u64 target;
  try {
    target = sp_order(t.q(), t.m());
  } catch (const std::overflow_error&) {
    throw CapExceeded("enumerate_sp: symplectic group order overflows 64 bits", 0, cap);
  }
  if (target > cap) {
    throw CapExceeded("enumerate_sp: group order " + std::to_string(target) +
                          " exceeds cap " + std::to_string(cap),
                      target, cap);
  }

  GramForm form = gram_from_trace_form(t);
  std::vector<MatQ> gens;
  for (int i = 0; i < n; ++i) {
    VecQ ei(static_cast<size_t>(n), 0);
    ei[static_cast<size_t>(i)] = 1;
    for (u64 c = 1; c < fq.q(); ++c) {
      gens.push_back(transvection(fq, form, ei, static_cast<Fq>(c)));
    }
  }
  MatGroup g = closure(fq, std::move(gens), cap);
  if (g.order() != target) {
    // Power-basis directions did not suffice; fall back to one transvection
    // direction per projective point, which is a known generating set.
    std::vector<MatQ> all;
    std::set<Subspace> lines;
    const u64 count = checked_pow(fq.q(), static_cast<u64>(n));
    for (u64 idx = 1; idx < count; ++idx) {
      u64 v = idx;
      VecQ vec(static_cast<size_t>(n), 0);
      for (int i = 0; i < n; ++i) {
        vec[static_cast<size_t>(i)] = static_cast<Fq>(v % fq.q());
        v /= fq.q();
      }
      if (!lines.insert(rref_subspace(fq, std::span<const VecQ>{&vec, 1}, n)).second)
        continue;
      for (u64 c = 1; c < fq.q(); ++c) {
        all.push_back(transvection(fq, form, vec, static_cast<Fq>(c)));
      }
    }
    g = closure(fq, std::move(all), cap);
    if (g.order() != target) {
      throw std::logic_error("enumerate_sp: closure order " + std::to_string(g.order()) +
                             " does not match the classical formula " +
                             std::to_string(target));
    }
  }
  return g;
}

}  // namespace symspread
