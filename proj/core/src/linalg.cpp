#include "symspread/linalg.hpp"

#include <algorithm>
#include <stdexcept>

#include "symspread/zsig.hpp"

namespace symspread {

MatQ MatQ::identity(int n) {
  MatQ m = zeros(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

MatQ MatQ::zeros(int n) {
  return MatQ{n, std::vector<Fq>(static_cast<size_t>(n) * n, 0)};
}

MatQ MatQ::scalar(int n, Fq c) {
  MatQ m = zeros(n);
  for (int i = 0; i < n; ++i) m(i, i) = c;
  return m;
}

size_t MatQHash::operator()(const MatQ& m) const noexcept {
  u64 h = 1469598103934665603ull;
  auto mix = [&](u64 v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  mix(static_cast<u64>(m.n));
  for (Fq x : m.e) mix(x);
  return static_cast<size_t>(h);
}

MatQ mat_mul(const FqTables& fq, const MatQ& x, const MatQ& y) {
  const int n = x.n;
  MatQ r = MatQ::zeros(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      Fq xik = x(i, k);
      if (xik == 0) continue;
      for (int j = 0; j < n; ++j) {
        r(i, j) = fq.add(r(i, j), fq.mul(xik, y(k, j)));
      }
    }
  }
  return r;
}

MatQ mat_add(const FqTables& fq, const MatQ& x, const MatQ& y) {
  MatQ r = x;
  for (size_t i = 0; i < r.e.size(); ++i) r.e[i] = fq.add(r.e[i], y.e[i]);
  return r;
}

MatQ mat_sub(const FqTables& fq, const MatQ& x, const MatQ& y) {
  MatQ r = x;
  for (size_t i = 0; i < r.e.size(); ++i) r.e[i] = fq.sub(r.e[i], y.e[i]);
  return r;
}

MatQ mat_neg(const FqTables& fq, const MatQ& x) {
  MatQ r = x;
  for (auto& v : r.e) v = fq.neg(v);
  return r;
}

MatQ mat_transpose(const MatQ& x) {
  MatQ r = MatQ::zeros(x.n);
  for (int i = 0; i < x.n; ++i) {
    for (int j = 0; j < x.n; ++j) r(j, i) = x(i, j);
  }
  return r;
}

MatQ mat_pow(const FqTables& fq, MatQ x, u64 e) {
  MatQ r = MatQ::identity(x.n);
  while (e > 0) {
    if (e & 1) r = mat_mul(fq, r, x);
    x = mat_mul(fq, x, x);
    e >>= 1;
  }
  return r;
}

VecQ vec_mat(const FqTables& fq, std::span<const Fq> v, const MatQ& m) {
  VecQ r(static_cast<size_t>(m.n), 0);
  for (int i = 0; i < m.n; ++i) {
    Fq vi = v[static_cast<size_t>(i)];
    if (vi == 0) continue;
    for (int j = 0; j < m.n; ++j) {
      r[static_cast<size_t>(j)] = fq.add(r[static_cast<size_t>(j)], fq.mul(vi, m(i, j)));
    }
  }
  return r;
}

bool mat_is_identity(const MatQ& x) { return x == MatQ::identity(x.n); }

u64 mat_order(const FqTables& fq, const MatQ& x) {
  if (!mat_inverse(fq, x)) throw std::domain_error("mat_order: singular matrix");
  MatQ acc = x;
  u64 k = 1;
  while (!mat_is_identity(acc)) {
    acc = mat_mul(fq, acc, x);
    ++k;
    if (k > (u64{1} << 40)) throw std::logic_error("mat_order: runaway loop");
  }
  return k;
}

int rref_in_place(const FqTables& fq, std::vector<Fq>& a, int rows, int cols) {
  auto at = [&](int i, int j) -> Fq& { return a[static_cast<size_t>(i) * cols + j]; };
  int r = 0;
  for (int col = 0; col < cols && r < rows; ++col) {
    int piv = -1;
    for (int i = r; i < rows; ++i) {
      if (at(i, col) != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != r) {
      for (int j = 0; j < cols; ++j) std::swap(at(piv, j), at(r, j));
    }
    Fq s = fq.inv(at(r, col));
    for (int j = 0; j < cols; ++j) at(r, j) = fq.mul(at(r, j), s);
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      Fq f = at(i, col);
      if (f == 0) continue;
      for (int j = 0; j < cols; ++j) {
        at(i, j) = fq.sub(at(i, j), fq.mul(f, at(r, j)));
      }
    }
    ++r;
  }
  a.resize(static_cast<size_t>(r) * cols);
  return r;
}

Subspace zero_subspace(int ambient) { return Subspace{ambient, 0, {}}; }

Subspace whole_space(int ambient) {
  Subspace s{ambient, ambient, std::vector<Fq>(static_cast<size_t>(ambient) * ambient, 0)};
  for (int i = 0; i < ambient; ++i) s.basis[static_cast<size_t>(i) * ambient + i] = 1;
  return s;
}

Subspace subspace_from_rows(const FqTables& fq, std::vector<Fq> flat, int rows, int ambient) {
  int rank = rref_in_place(fq, flat, rows, ambient);
  return Subspace{ambient, rank, std::move(flat)};
}

Subspace rref_subspace(const FqTables& fq, std::span<const VecQ> vectors, int ambient) {
  std::vector<Fq> flat;
  flat.reserve(vectors.size() * static_cast<size_t>(ambient));
  for (const auto& v : vectors) {
    if (static_cast<int>(v.size()) != ambient) {
      throw std::invalid_argument("rref_subspace: vector length mismatch");
    }
    flat.insert(flat.end(), v.begin(), v.end());
  }
  return subspace_from_rows(fq, std::move(flat), static_cast<int>(vectors.size()), ambient);
}

bool subspace_contains(const FqTables& fq, const Subspace& u, std::span<const Fq> v) {
  std::vector<Fq> flat = u.basis;
  flat.insert(flat.end(), v.begin(), v.end());
  int rank = rref_in_place(fq, flat, u.rows + 1, u.ambient);
  return rank == u.rows;
}

Subspace subspace_sum(const FqTables& fq, const Subspace& x, const Subspace& y) {
  if (x.ambient != y.ambient) throw std::invalid_argument("subspace_sum: ambient mismatch");
  std::vector<Fq> flat = x.basis;
  flat.insert(flat.end(), y.basis.begin(), y.basis.end());
  return subspace_from_rows(fq, std::move(flat), x.rows + y.rows, x.ambient);
}

Subspace intersect(const FqTables& fq, const Subspace& x, const Subspace& y) {
  if (x.ambient != y.ambient) throw std::invalid_argument("intersect: ambient mismatch");
  const int n = x.ambient;
  const int rx = x.rows, ry = y.rows;
  if (rx == 0 || ry == 0) return zero_subspace(n);

  // Kernel of the stacked (rx+ry) x n matrix [X; -Y] acting on the left:
  // a row (u, v) with u*X = v*Y identifies an intersection vector u*X.
  std::vector<Fq> stacked = x.basis;
  for (Fq c : y.basis) stacked.push_back(fq.neg(c));
  const int rows = rx + ry;

  // Left kernel via RREF of the transpose.
  std::vector<Fq> tr(static_cast<size_t>(n) * rows, 0);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < n; ++j) {
      tr[static_cast<size_t>(j) * rows + i] = stacked[static_cast<size_t>(i) * n + j];
    }
  }
  int rank = rref_in_place(fq, tr, n, rows);

  // Free-column kernel basis of the transpose.
  std::vector<int> pivot_col(static_cast<size_t>(rank));
  std::vector<bool> is_pivot(static_cast<size_t>(rows), false);
  for (int i = 0; i < rank; ++i) {
    int j = 0;
    while (tr[static_cast<size_t>(i) * rows + j] == 0) ++j;
    pivot_col[static_cast<size_t>(i)] = j;
    is_pivot[static_cast<size_t>(j)] = true;
  }
  std::vector<VecQ> inter_vectors;
  for (int free = 0; free < rows; ++free) {
    if (is_pivot[static_cast<size_t>(free)]) continue;
    VecQ z(static_cast<size_t>(rows), 0);
    z[static_cast<size_t>(free)] = 1;
    for (int i = 0; i < rank; ++i) {
      z[static_cast<size_t>(pivot_col[static_cast<size_t>(i)])] =
          fq.neg(tr[static_cast<size_t>(i) * rows + free]);
    }
    // Intersection vector is the X-combination named by the first rx entries.
    VecQ w(static_cast<size_t>(n), 0);
    for (int i = 0; i < rx; ++i) {
      Fq zi = z[static_cast<size_t>(i)];
      if (zi == 0) continue;
      for (int j = 0; j < n; ++j) {
        w[static_cast<size_t>(j)] =
            fq.add(w[static_cast<size_t>(j)], fq.mul(zi, x.basis[static_cast<size_t>(i) * n + j]));
      }
    }
    inter_vectors.push_back(std::move(w));
  }
  return rref_subspace(fq, inter_vectors, n);
}

Subspace apply_to_subspace(const FqTables& fq, const Subspace& u, const MatQ& m) {
  std::vector<VecQ> rows;
  rows.reserve(static_cast<size_t>(u.rows));
  for (int i = 0; i < u.rows; ++i) {
    std::span<const Fq> row{u.basis.data() + static_cast<size_t>(i) * u.ambient,
                            static_cast<size_t>(u.ambient)};
    rows.push_back(vec_mat(fq, row, m));
  }
  return rref_subspace(fq, rows, u.ambient);
}

Subspace left_kernel(const FqTables& fq, const MatQ& m) {
  const int n = m.n;
  std::vector<Fq> tr(static_cast<size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) tr[static_cast<size_t>(j) * n + i] = m(i, j);
  }
  int rank = rref_in_place(fq, tr, n, n);
  std::vector<int> pivot_col(static_cast<size_t>(rank));
  std::vector<bool> is_pivot(static_cast<size_t>(n), false);
  for (int i = 0; i < rank; ++i) {
    int j = 0;
    while (tr[static_cast<size_t>(i) * n + j] == 0) ++j;
    pivot_col[static_cast<size_t>(i)] = j;
    is_pivot[static_cast<size_t>(j)] = true;
  }
  std::vector<VecQ> kernel_rows;
  for (int free = 0; free < n; ++free) {
    if (is_pivot[static_cast<size_t>(free)]) continue;
    VecQ z(static_cast<size_t>(n), 0);
    z[static_cast<size_t>(free)] = 1;
    for (int i = 0; i < rank; ++i) {
      z[static_cast<size_t>(pivot_col[static_cast<size_t>(i)])] =
          fq.neg(tr[static_cast<size_t>(i) * n + free]);
    }
    kernel_rows.push_back(std::move(z));
  }
  return rref_subspace(fq, kernel_rows, n);
}

Subspace eigenspace(const FqTables& fq, const MatQ& m, Fq c) {
  return left_kernel(fq, mat_sub(fq, m, MatQ::scalar(m.n, c)));
}

std::vector<VecQ> subspace_vectors(const FqTables& fq, const Subspace& u) {
  std::vector<VecQ> out;
  const u64 count = checked_pow(fq.q(), static_cast<u64>(u.rows));
  out.reserve(count);
  for (u64 idx = 0; idx < count; ++idx) {
    u64 t = idx;
    VecQ v(static_cast<size_t>(u.ambient), 0);
    for (int i = 0; i < u.rows; ++i) {
      Fq ci = static_cast<Fq>(t % fq.q());
      t /= fq.q();
      if (ci == 0) continue;
      for (int j = 0; j < u.ambient; ++j) {
        v[static_cast<size_t>(j)] = fq.add(
            v[static_cast<size_t>(j)], fq.mul(ci, u.basis[static_cast<size_t>(i) * u.ambient + j]));
      }
    }
    out.push_back(std::move(v));
  }
  return out;
}

PolyQ poly_trim(PolyQ f) {
  while (!f.c.empty() && f.c.back() == 0) f.c.pop_back();
  return f;
}

PolyQ poly_add(const FqTables& fq, const PolyQ& x, const PolyQ& y) {
  PolyQ r;
  r.c.resize(std::max(x.c.size(), y.c.size()), 0);
  for (size_t i = 0; i < r.c.size(); ++i) {
    Fq a = i < x.c.size() ? x.c[i] : 0;
    Fq b = i < y.c.size() ? y.c[i] : 0;
    r.c[i] = fq.add(a, b);
  }
  return poly_trim(std::move(r));
}

PolyQ poly_mul(const FqTables& fq, const PolyQ& x, const PolyQ& y) {
  if (x.c.empty() || y.c.empty()) return {};
  PolyQ r;
  r.c.assign(x.c.size() + y.c.size() - 1, 0);
  for (size_t i = 0; i < x.c.size(); ++i) {
    if (x.c[i] == 0) continue;
    for (size_t j = 0; j < y.c.size(); ++j) {
      r.c[i + j] = fq.add(r.c[i + j], fq.mul(x.c[i], y.c[j]));
    }
  }
  return poly_trim(std::move(r));
}

std::pair<PolyQ, PolyQ> poly_divmod(const FqTables& fq, const PolyQ& x, const PolyQ& y) {
  PolyQ rem = poly_trim(x);
  PolyQ div = poly_trim(y);
  if (div.c.empty()) throw std::domain_error("poly_divmod: division by zero");
  PolyQ quot;
  if (rem.degree() >= div.degree()) {
    quot.c.assign(static_cast<size_t>(rem.degree() - div.degree() + 1), 0);
  }
  Fq lead_inv = fq.inv(div.c.back());
  while (!rem.c.empty() && rem.degree() >= div.degree()) {
    int shift = rem.degree() - div.degree();
    Fq f = fq.mul(rem.c.back(), lead_inv);
    quot.c[static_cast<size_t>(shift)] = f;
    for (size_t j = 0; j < div.c.size(); ++j) {
      size_t idx = static_cast<size_t>(shift) + j;
      rem.c[idx] = fq.sub(rem.c[idx], fq.mul(f, div.c[j]));
    }
    rem = poly_trim(std::move(rem));
  }
  return {poly_trim(std::move(quot)), std::move(rem)};
}

PolyQ poly_monic(const FqTables& fq, PolyQ f) {
  f = poly_trim(std::move(f));
  if (f.c.empty()) return f;
  Fq s = fq.inv(f.c.back());
  for (auto& c : f.c) c = fq.mul(c, s);
  return f;
}

PolyQ poly_gcd(const FqTables& fq, PolyQ x, PolyQ y) {
  x = poly_trim(std::move(x));
  y = poly_trim(std::move(y));
  while (!y.c.empty()) {
    PolyQ r = poly_divmod(fq, x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return poly_monic(fq, std::move(x));
}

PolyQ poly_lcm(const FqTables& fq, const PolyQ& x, const PolyQ& y) {
  if (x.c.empty() || y.c.empty()) return {};
  PolyQ g = poly_gcd(fq, x, y);
  PolyQ prod = poly_mul(fq, x, y);
  return poly_monic(fq, poly_divmod(fq, prod, g).first);
}

MatQ poly_eval_matrix(const FqTables& fq, const PolyQ& f, const MatQ& m) {
  MatQ acc = MatQ::zeros(m.n);
  // Horner, highest coefficient first.
  for (size_t i = f.c.size(); i-- > 0;) {
    acc = mat_mul(fq, acc, m);
    for (int d = 0; d < m.n; ++d) acc(d, d) = fq.add(acc(d, d), f.c[i]);
  }
  return acc;
}

bool poly_is_irreducible(const FqTables& fq, const PolyQ& f) {
  PolyQ g = poly_trim(f);
  int d = g.degree();
  if (d < 1) return false;
  if (d == 1) return true;
  auto mulmod = [&](const PolyQ& x, const PolyQ& y) {
    return poly_divmod(fq, poly_mul(fq, x, y), g).second;
  };
  auto powq = [&](PolyQ base) {
    // base^q mod g by square-and-multiply
    PolyQ r{{1}};
    u64 e = fq.q();
    while (e > 0) {
      if (e & 1) r = mulmod(r, base);
      base = mulmod(base, base);
      e >>= 1;
    }
    return r;
  };
  PolyQ x{{0, 1}};
  std::vector<PolyQ> frob(static_cast<size_t>(d + 1));
  frob[0] = x;
  for (int k = 1; k <= d; ++k) frob[static_cast<size_t>(k)] = powq(frob[static_cast<size_t>(k - 1)]);
  if (poly_trim(frob[static_cast<size_t>(d)]) != x) return false;
  for (const auto& [t, e] : factorize(static_cast<u64>(d))) {
    PolyQ diff = poly_add(fq, frob[static_cast<size_t>(d / t)],
                          PolyQ{{0, fq.neg(1)}});
    PolyQ gg = poly_gcd(fq, diff, g);
    if (gg.degree() != 0) return false;
  }
  return true;
}

std::string poly_to_string(const PolyQ& f) {
  if (f.c.empty()) return "0";
  std::string out;
  for (int i = f.degree(); i >= 0; --i) {
    Fq c = f.c[static_cast<size_t>(i)];
    if (c == 0) continue;
    if (!out.empty()) out += " + ";
    if (i == 0) {
      out += std::to_string(c);
    } else {
      if (c != 1) out += std::to_string(c) + "*";
      out += i == 1 ? "x" : "x^" + std::to_string(i);
    }
  }
  return out.empty() ? "0" : out;
}

namespace {

// Monic annihilator of a single vector under v -> v*M, by Krylov growth with
// polynomial tracking columns.
PolyQ local_annihilator(const FqTables& fq, const MatQ& m, const VecQ& v0) {
  const int n = m.n;
  // Each work row is [vector part | polynomial part], polynomial degree <= n.
  const int width = n + n + 1;
  std::vector<std::vector<Fq>> reduced;  // echelonized rows, vector part nonzero
  std::vector<int> lead;                 // leading column of each reduced row

  VecQ cur = v0;
  for (int step = 0; step <= n; ++step) {
    std::vector<Fq> row(static_cast<size_t>(width), 0);
    std::copy(cur.begin(), cur.end(), row.begin());
    row[static_cast<size_t>(n + step)] = 1;  // x^step

    // Reduce the vector part against existing rows.
    for (size_t k = 0; k < reduced.size(); ++k) {
      Fq f = row[static_cast<size_t>(lead[k])];
      if (f == 0) continue;
      for (int j = 0; j < width; ++j) {
        row[static_cast<size_t>(j)] = fq.sub(row[static_cast<size_t>(j)],
                                             fq.mul(f, reduced[k][static_cast<size_t>(j)]));
      }
    }
    int l = -1;
    for (int j = 0; j < n; ++j) {
      if (row[static_cast<size_t>(j)] != 0) {
        l = j;
        break;
      }
    }
    if (l < 0) {
      PolyQ ann;
      ann.c.assign(row.begin() + n, row.end());
      return poly_monic(fq, std::move(ann));
    }
    Fq s = fq.inv(row[static_cast<size_t>(l)]);
    for (auto& c : row) c = fq.mul(c, s);
    reduced.push_back(std::move(row));
    lead.push_back(l);
    cur = vec_mat(fq, cur, m);
  }
  throw std::logic_error("local_annihilator: no relation within n+1 steps");
}

}  // namespace

PolyQ minimal_polynomial(const FqTables& fq, const MatQ& m) {
  const int n = m.n;
  PolyQ result{{1}};
  for (int i = 0; i < n; ++i) {
    VecQ ei(static_cast<size_t>(n), 0);
    ei[static_cast<size_t>(i)] = 1;
    result = poly_lcm(fq, result, local_annihilator(fq, m, ei));
    if (result.degree() == n) break;
  }
  return result;
}

int commutant_dimension(const FqTables& fq, const MatQ& m) {
  const int n = m.n;
  const int vars = n * n;
  std::vector<Fq> sys(static_cast<size_t>(vars) * vars, 0);
  auto sys_at = [&](int eq, int var) -> Fq& {
    return sys[static_cast<size_t>(eq) * vars + var];
  };
  // Equation (i,j): sum_k X[i][k] M[k][j] - M[i][k] X[k][j] = 0.
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      int eq = i * n + j;
      for (int k = 0; k < n; ++k) {
        int v1 = i * n + k;
        sys_at(eq, v1) = fq.add(sys_at(eq, v1), m(k, j));
        int v2 = k * n + j;
        sys_at(eq, v2) = fq.sub(sys_at(eq, v2), m(i, k));
      }
    }
  }
  int rank = rref_in_place(fq, sys, vars, vars);
  return vars - rank;
}

Fq i4_scalar(const FqTables& fq) {
  if (fq.q() % 4 != 1) {
    throw std::domain_error("i4_scalar: no square root of -1 in F_q");
  }
  Fq m1 = fq.neg(1);
  for (u64 c = 0; c < fq.q(); ++c) {
    Fq cc = static_cast<Fq>(c);
    if (fq.mul(cc, cc) == m1) return cc;
  }
  throw std::logic_error("i4_scalar: square root not found");
}

std::optional<MatQ> mat_inverse(const FqTables& fq, const MatQ& x) {
  const int n = x.n;
  std::vector<Fq> aug(static_cast<size_t>(n) * 2 * n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug[static_cast<size_t>(i) * 2 * n + j] = x(i, j);
    aug[static_cast<size_t>(i) * 2 * n + n + i] = 1;
  }
  int rank = rref_in_place(fq, aug, n, 2 * n);
  if (rank < n) return std::nullopt;
  // After RREF of [X | I] with X invertible, the left block is the identity.
  MatQ inv = MatQ::zeros(n);
  for (int i = 0; i < n; ++i) {
    if (aug[static_cast<size_t>(i) * 2 * n + i] != 1) return std::nullopt;
    for (int j = 0; j < n; ++j) inv(i, j) = aug[static_cast<size_t>(i) * 2 * n + n + j];
  }
  return inv;
}

}  // namespace symspread
