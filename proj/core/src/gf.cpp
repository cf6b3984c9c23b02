#include "symspread/gf.hpp"

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <stdexcept>

#include "symspread/zsig.hpp"

namespace symspread {

namespace {

using Poly = std::vector<u8>;  // over F_p, low degree first, may carry zeros

int degree_of(const Poly& f) {
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i) {
    if (f[i] != 0) return i;
  }
  return -1;
}

void trim(Poly& f) { f.resize(static_cast<size_t>(degree_of(f) + 1)); }

Poly poly_mul(const Poly& x, const Poly& y, int p) {
  if (x.empty() || y.empty()) return {};
  Poly r(x.size() + y.size() - 1, 0);
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (size_t j = 0; j < y.size(); ++j) {
      r[i + j] = static_cast<u8>((r[i + j] + x[i] * y[j]) % p);
    }
  }
  return r;
}

// r mod f in place; f monic.
void poly_reduce(Poly& r, const Poly& f, int p) {
  int df = degree_of(f);
  for (int i = degree_of(r); i >= df; --i) {
    u8 c = r[static_cast<size_t>(i)];
    if (c == 0) continue;
    for (int j = 0; j <= df; ++j) {
      int idx = i - df + j;
      int v = r[static_cast<size_t>(idx)] - c * f[static_cast<size_t>(j)] % p;
      r[static_cast<size_t>(idx)] = static_cast<u8>(((v % p) + p) % p);
    }
  }
  trim(r);
}

Poly poly_mulmod(const Poly& x, const Poly& y, const Poly& f, int p) {
  Poly r = poly_mul(x, y, p);
  poly_reduce(r, f, p);
  return r;
}

Poly poly_powmod(Poly base, u64 e, const Poly& f, int p) {
  Poly r = {1};
  while (e > 0) {
    if (e & 1) r = poly_mulmod(r, base, f, p);
    base = poly_mulmod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

Poly poly_gcd(Poly x, Poly y, int p) {
  auto invmod = [&](int v) {
    for (int t = 1; t < p; ++t) {
      if (t * v % p == 1) return t;
    }
    throw std::logic_error("invmod: not invertible");
  };
  trim(x);
  trim(y);
  while (!y.empty()) {
    // x mod y with y made monic on the fly
    int dy = degree_of(y);
    int lead_inv = invmod(y[static_cast<size_t>(dy)]);
    Poly ym = y;
    for (auto& c : ym) c = static_cast<u8>(c * lead_inv % p);
    poly_reduce(x, ym, p);
    std::swap(x, y);
  }
  return x;
}

// Irreducibility over F_p: x^{p^d} == x mod f, and for every prime t | d,
// gcd(x^{p^{d/t}} - x, f) = 1.
bool poly_irreducible(const Poly& f, int p) {
  int d = degree_of(f);
  if (d < 1) return false;
  if (d == 1) return true;
  Poly x = {0, 1};
  std::vector<Poly> frob(static_cast<size_t>(d + 1));
  frob[0] = x;
  for (int k = 1; k <= d; ++k) {
    frob[static_cast<size_t>(k)] =
        poly_powmod(frob[static_cast<size_t>(k - 1)], static_cast<u64>(p), f, p);
  }
  if (frob[static_cast<size_t>(d)] != x) return false;
  for (const auto& [t, e] : factorize(static_cast<u64>(d))) {
    Poly diff = frob[static_cast<size_t>(d / t)];
    diff.resize(std::max(diff.size(), size_t{2}), 0);
    diff[1] = static_cast<u8>((diff[1] + p - 1) % p);
    trim(diff);
    Poly g = poly_gcd(diff, f, p);
    if (degree_of(g) != 0) return false;
  }
  return true;
}

// Advance digits (index 0 most significant) through all base-p tuples in
// lexicographic order; returns false after the last tuple.
bool next_tuple(std::vector<u8>& digits, int p) {
  for (int i = static_cast<int>(digits.size()) - 1; i >= 0; --i) {
    if (digits[static_cast<size_t>(i)] + 1 < p) {
      ++digits[static_cast<size_t>(i)];
      std::fill(digits.begin() + i + 1, digits.end(), u8{0});
      return true;
    }
  }
  return false;
}

}  // namespace

Fq FqTables::inv(Fq x) const {
  if (x == 0) throw std::domain_error("FqTables::inv: zero scalar");
  return inv_[x];
}

std::span<const u8> FqTables::digits(Fq x) const {
  return {digits_.data() + static_cast<size_t>(x) * a_, static_cast<size_t>(a_)};
}

Fq FqTables::from_digits(std::span<const u8> d) const {
  if (static_cast<int>(d.size()) != a_) {
    throw std::invalid_argument("FqTables::from_digits: wrong tuple length");
  }
  size_t idx = 0;
  for (int k = 0; k < a_; ++k) idx = idx * p_ + d[static_cast<size_t>(k)];
  return from_digits_[idx];
}

Tower Tower::make(int p, int a, int m, u64 field_size_cap) {
  if (p < 2 || !is_prime(static_cast<u64>(p))) {
    throw std::invalid_argument("make_tower: p = " + std::to_string(p) +
                                " is not prime");
  }
  if (p == 2) throw std::invalid_argument("make_tower: p must be odd");
  if (a < 1 || m < 1) {
    throw std::invalid_argument("make_tower: a and m must be positive");
  }

  Tower t;
  t.p_ = p;
  t.a_ = a;
  t.m_ = m;
  t.deg_ = 2 * a * m;
  t.q_ = checked_pow(static_cast<u64>(p), static_cast<u64>(a));
  t.qm_ = checked_pow(t.q_, static_cast<u64>(m));
  u64 size;
  try {
    size = checked_pow(static_cast<u64>(p), static_cast<u64>(t.deg_));
  } catch (const std::overflow_error&) {
    throw CapExceeded("make_tower: field size p^{2am} overflows and exceeds the cap of " +
                          std::to_string(field_size_cap) + " elements",
                      0, field_size_cap);
  }
  if (size > field_size_cap) {
    throw CapExceeded("make_tower: field size " + std::to_string(size) +
                          " exceeds the cap of " + std::to_string(field_size_cap) +
                          " elements",
                      size, field_size_cap);
  }
  if (t.q_ > 0xFFFF) {
    throw CapExceeded("make_tower: q exceeds the scalar-code range", t.q_, 0xFFFF);
  }
  t.size_ = size;

  // Lexicographically smallest monic irreducible modulus, coefficients
  // compared low degree first.
  {
    std::vector<u8> low(static_cast<size_t>(t.deg_), 0);
    bool found = false;
    do {
      if (low[0] == 0) continue;  // constant term 0 means x divides
      Poly f(low.begin(), low.end());
      f.push_back(1);
      if (poly_irreducible(f, p)) {
        t.modulus_.assign(f.begin(), f.end());
        found = true;
        break;
      }
    } while (next_tuple(low, p));
    if (!found) throw std::logic_error("make_tower: no irreducible modulus found");
  }

  // Smallest-coefficient-vector element of full multiplicative order.
  {
    const u64 group = size - 1;
    auto fac = factorize(group);
    std::vector<u8> cand(static_cast<size_t>(t.deg_), 0);
    bool found = false;
    Poly modp(t.modulus_.begin(), t.modulus_.end());
    while (next_tuple(cand, p)) {
      Poly x(cand.begin(), cand.end());
      trim(x);
      if (x.empty()) continue;
      bool primitive = true;
      for (const auto& [r, e] : fac) {
        Poly pw = poly_powmod(x, group / r, modp, p);
        if (pw == Poly{1}) {
          primitive = false;
          break;
        }
      }
      if (primitive) {
        t.omega_.coeffs.assign(cand.begin(), cand.end());
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("make_tower: no primitive element found");
  }

  t.build_tables();

  t.epsilon_ = t.omega_pow((t.qm_ + 1) / 2);
  t.lambda_ = t.omega_pow((t.q_ - 1) / 2);
  t.mu_ = t.omega_pow(t.qm_ - 1);

  // Construction-time verification of the model constants.
  if (t.frobenius(t.epsilon_, m) != t.neg(t.epsilon_)) {
    throw std::logic_error("make_tower: epsilon^{q^m} != -epsilon");
  }
  if (t.mult_order(t.mu_) != t.qm_ + 1) {
    throw std::logic_error("make_tower: mu does not have order q^m + 1");
  }

  t.build_scalar_layer();
  return t;
}

void Tower::build_tables() {
  const u64 group = size_ - 1;
  antilog_.assign(group, 0);
  dlog_.assign(size_, 0);
  Poly modp(modulus_.begin(), modulus_.end());
  FFElem cur = one();
  for (u64 k = 0; k < group; ++k) {
    u32 enc = encode(cur);
    antilog_[k] = enc;
    dlog_[enc] = static_cast<u32>(k);
    cur = mul_poly(cur, omega_);
  }
  if (!(cur == one())) {
    throw std::logic_error("make_tower: omega order is not q^{2m} - 1");
  }
}

void Tower::build_scalar_layer() {
  const u64 group = size_ - 1;
  const u64 step = group / (q_ - 1);

  fq_encodings_.clear();
  fq_encodings_.push_back(0);
  for (u64 j = 0; j < q_ - 1; ++j) fq_encodings_.push_back(antilog_[j * step]);
  std::sort(fq_encodings_.begin(), fq_encodings_.end());

  fq_.q_ = q_;
  fq_.p_ = p_;
  fq_.a_ = a_;

  auto code_of_encoding = [&](u32 enc) -> Fq {
    auto it = std::lower_bound(fq_encodings_.begin(), fq_encodings_.end(), enc);
    return static_cast<Fq>(it - fq_encodings_.begin());
  };

  fq_.add_.assign(q_ * q_, 0);
  fq_.mul_.assign(q_ * q_, 0);
  fq_.neg_.assign(q_, 0);
  fq_.inv_.assign(q_, 0);
  for (u64 x = 0; x < q_; ++x) {
    FFElem ex = decode(fq_encodings_[x]);
    fq_.neg_[x] = code_of_encoding(encode(neg(ex)));
    if (x != 0) fq_.inv_[x] = code_of_encoding(encode(inv(ex)));
    for (u64 y = 0; y < q_; ++y) {
      FFElem ey = decode(fq_encodings_[y]);
      fq_.add_[x * q_ + y] = code_of_encoding(encode(add(ex, ey)));
      fq_.mul_[x * q_ + y] = code_of_encoding(encode(mul(ex, ey)));
    }
  }

  // Digit expansion over the basis 1, s, ..., s^{a-1}, s a generator of F_q*.
  FFElem s = decode(antilog_[step]);
  fq_.digits_.assign(q_ * a_, 0);
  fq_.from_digits_.assign(q_, 0);
  std::vector<u8> tuple(static_cast<size_t>(a_), 0);
  size_t tuple_index = 0;
  do {
    FFElem acc = zero();
    FFElem sk = one();
    for (int k = 0; k < a_; ++k) {
      acc = add(acc, mul(from_base_int(tuple[static_cast<size_t>(k)]), sk));
      sk = mul(sk, s);
    }
    Fq code = code_of_encoding(encode(acc));
    fq_.from_digits_[tuple_index] = code;
    std::copy(tuple.begin(), tuple.end(),
              fq_.digits_.begin() + static_cast<size_t>(code) * a_);
    ++tuple_index;
  } while (next_tuple(tuple, p_));

  // Transition between the modulus polynomial basis and the power basis
  // omega^j s^k over F_p; inverted once by Gauss-Jordan.
  const int n = deg_;
  std::vector<u8> mat(static_cast<size_t>(n) * (2 * n), 0);  // [B | I]
  for (int j = 0; j < 2 * m_; ++j) {
    for (int k = 0; k < a_; ++k) {
      FFElem b = mul(omega_pow(static_cast<u64>(j)), pow(s, static_cast<u64>(k)));
      int col = j * a_ + k;
      for (int row = 0; row < n; ++row) {
        mat[static_cast<size_t>(row) * (2 * n) + col] = b.coeffs[static_cast<size_t>(row)];
      }
    }
  }
  for (int i = 0; i < n; ++i) mat[static_cast<size_t>(i) * (2 * n) + n + i] = 1;

  auto invmod = [&](int v) {
    for (int tv = 1; tv < p_; ++tv) {
      if (tv * v % p_ == 1) return tv;
    }
    throw std::logic_error("build_scalar_layer: basis matrix singular");
  };
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int row = col; row < n; ++row) {
      if (mat[static_cast<size_t>(row) * (2 * n) + col] != 0) {
        piv = row;
        break;
      }
    }
    if (piv < 0) throw std::logic_error("build_scalar_layer: basis matrix singular");
    if (piv != col) {
      for (int c = 0; c < 2 * n; ++c) {
        std::swap(mat[static_cast<size_t>(piv) * (2 * n) + c],
                  mat[static_cast<size_t>(col) * (2 * n) + c]);
      }
    }
    int s0 = invmod(mat[static_cast<size_t>(col) * (2 * n) + col]);
    for (int c = 0; c < 2 * n; ++c) {
      auto& v = mat[static_cast<size_t>(col) * (2 * n) + c];
      v = static_cast<u8>(v * s0 % p_);
    }
    for (int row = 0; row < n; ++row) {
      if (row == col) continue;
      int f = mat[static_cast<size_t>(row) * (2 * n) + col];
      if (f == 0) continue;
      for (int c = 0; c < 2 * n; ++c) {
        int v = mat[static_cast<size_t>(row) * (2 * n) + c] -
                f * mat[static_cast<size_t>(col) * (2 * n) + c] % p_;
        mat[static_cast<size_t>(row) * (2 * n) + c] = static_cast<u8>(((v % p_) + p_) % p_);
      }
    }
  }
  basis_inv_.assign(static_cast<size_t>(n) * n, 0);
  for (int row = 0; row < n; ++row) {
    for (int c = 0; c < n; ++c) {
      basis_inv_[static_cast<size_t>(row) * n + c] =
          mat[static_cast<size_t>(row) * (2 * n) + n + c];
    }
  }
}

FFElem Tower::zero() const { return FFElem{std::vector<u8>(static_cast<size_t>(deg_), 0)}; }

FFElem Tower::one() const {
  FFElem x = zero();
  x.coeffs[0] = 1;
  return x;
}

FFElem Tower::from_base_int(u64 c) const {
  FFElem x = zero();
  x.coeffs[0] = static_cast<u8>(c % p_);
  return x;
}

FFElem Tower::omega_pow(u64 k) const {
  return decode(antilog_[k % (size_ - 1)]);
}

bool Tower::is_zero(const FFElem& x) const {
  return std::all_of(x.coeffs.begin(), x.coeffs.end(), [](u8 c) { return c == 0; });
}

FFElem Tower::add(const FFElem& x, const FFElem& y) const {
  FFElem r = x;
  for (int i = 0; i < deg_; ++i) {
    r.coeffs[static_cast<size_t>(i)] =
        static_cast<u8>((r.coeffs[static_cast<size_t>(i)] + y.coeffs[static_cast<size_t>(i)]) % p_);
  }
  return r;
}

FFElem Tower::neg(const FFElem& x) const {
  FFElem r = x;
  for (auto& c : r.coeffs) c = static_cast<u8>((p_ - c) % p_);
  return r;
}

FFElem Tower::sub(const FFElem& x, const FFElem& y) const { return add(x, neg(y)); }

FFElem Tower::mul_poly(const FFElem& x, const FFElem& y) const {
  Poly r = poly_mul(Poly(x.coeffs.begin(), x.coeffs.end()),
                    Poly(y.coeffs.begin(), y.coeffs.end()), p_);
  Poly modp(modulus_.begin(), modulus_.end());
  poly_reduce(r, modp, p_);
  r.resize(static_cast<size_t>(deg_), 0);
  return FFElem{std::vector<u8>(r.begin(), r.end())};
}

FFElem Tower::mul(const FFElem& x, const FFElem& y) const {
  if (is_zero(x) || is_zero(y)) return zero();
  u64 d = (static_cast<u64>(dlog_[encode(x)]) + dlog_[encode(y)]) % (size_ - 1);
  return decode(antilog_[d]);
}

FFElem Tower::inv(const FFElem& x) const {
  if (is_zero(x)) throw std::domain_error("Tower::inv: zero element");
  u64 d = dlog_[encode(x)];
  return decode(antilog_[(size_ - 1 - d) % (size_ - 1)]);
}

FFElem Tower::pow(const FFElem& x, u64 e) const {
  if (is_zero(x)) return e == 0 ? one() : zero();
  u64 d = dlog_[encode(x)];
  u64 g = size_ - 1;
  u64 de = (d % g) * (e % g) % g;
  return decode(antilog_[de]);
}

u32 Tower::encode(const FFElem& x) const {
  u32 idx = 0;
  for (int i = deg_ - 1; i >= 0; --i) {
    idx = idx * static_cast<u32>(p_) + x.coeffs[static_cast<size_t>(i)];
  }
  return idx;
}

FFElem Tower::decode(u32 index) const {
  FFElem x = zero();
  for (int i = 0; i < deg_; ++i) {
    x.coeffs[static_cast<size_t>(i)] = static_cast<u8>(index % p_);
    index /= static_cast<u32>(p_);
  }
  return x;
}

std::optional<u64> Tower::dlog(const FFElem& x) const {
  if (is_zero(x)) return std::nullopt;
  return dlog_[encode(x)];
}

u64 Tower::mult_order(const FFElem& x) const {
  if (is_zero(x)) throw std::domain_error("Tower::mult_order: zero element");
  u64 d = dlog_[encode(x)];
  u64 g = size_ - 1;
  return g / std::gcd(g, d);
}

FFElem Tower::frobenius(const FFElem& x, int k) const {
  int n = 2 * m_;
  int kk = ((k % n) + n) % n;
  if (is_zero(x) || kk == 0) return x;
  u64 qk = 1;
  for (int i = 0; i < kk; ++i) qk *= q_;
  u64 g = size_ - 1;
  u64 d = static_cast<u64>(dlog_[encode(x)]) % g;
  return decode(antilog_[(d * (qk % g)) % g]);
}

FFElem Tower::trace_to_base(const FFElem& x) const {
  FFElem acc = zero();
  for (int i = 0; i < 2 * m_; ++i) acc = add(acc, frobenius(x, i));
  return acc;
}

std::vector<FFElem> Tower::subfield_elements(int d) const {
  if (d < 1 || (2 * m_) % d != 0) {
    throw std::invalid_argument("subfield_elements: d must divide 2m");
  }
  u64 qd = 1;
  for (int i = 0; i < d; ++i) qd *= q_;
  u64 step = (size_ - 1) / (qd - 1);
  std::vector<u32> encs;
  encs.push_back(0);
  for (u64 j = 0; j < qd - 1; ++j) encs.push_back(antilog_[j * step]);
  std::sort(encs.begin(), encs.end());
  std::vector<FFElem> out;
  out.reserve(encs.size());
  for (u32 e : encs) out.push_back(decode(e));
  return out;
}

bool Tower::in_base_field(const FFElem& x) const {
  u32 enc = encode(x);
  return std::binary_search(fq_encodings_.begin(), fq_encodings_.end(), enc);
}

Fq Tower::scalar_from_elem(const FFElem& x) const {
  u32 enc = encode(x);
  auto it = std::lower_bound(fq_encodings_.begin(), fq_encodings_.end(), enc);
  if (it == fq_encodings_.end() || *it != enc) {
    throw std::domain_error("scalar_from_elem: element not in F_q");
  }
  return static_cast<Fq>(it - fq_encodings_.begin());
}

FFElem Tower::elem_from_scalar(Fq c) const {
  if (c >= q_) throw std::domain_error("elem_from_scalar: code out of range");
  return decode(fq_encodings_[c]);
}

std::vector<Fq> Tower::coords(const FFElem& x) const {
  const int n = deg_;
  std::vector<u8> digits(static_cast<size_t>(n), 0);
  for (int row = 0; row < n; ++row) {
    int acc = 0;
    for (int c = 0; c < n; ++c) {
      acc += basis_inv_[static_cast<size_t>(row) * n + c] * x.coeffs[static_cast<size_t>(c)];
    }
    digits[static_cast<size_t>(row)] = static_cast<u8>(acc % p_);
  }
  std::vector<Fq> v(static_cast<size_t>(2 * m_));
  for (int j = 0; j < 2 * m_; ++j) {
    v[static_cast<size_t>(j)] =
        fq_.from_digits({digits.data() + static_cast<size_t>(j) * a_, static_cast<size_t>(a_)});
  }
  return v;
}

FFElem Tower::from_coords(std::span<const Fq> v) const {
  if (static_cast<int>(v.size()) != 2 * m_) {
    throw std::invalid_argument("from_coords: expected 2m coordinates");
  }
  FFElem acc = zero();
  for (int j = 0; j < 2 * m_; ++j) {
    acc = add(acc, mul(elem_from_scalar(v[static_cast<size_t>(j)]),
                       omega_pow(static_cast<u64>(j))));
  }
  return acc;
}

}  // namespace symspread
