#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "symspread/gf.hpp"
#include "symspread/zsig.hpp"

using namespace symspread;

namespace {

// Test-local polynomial arithmetic over F_p, independent of the tower's
// discrete-log tables. Used as the multiplication oracle.
std::vector<int> poly_mul_mod(const std::vector<u8>& x, const std::vector<u8>& y,
                              const std::vector<u8>& mod, int p) {
  std::vector<int> prod(x.size() + y.size() - 1, 0);
  for (size_t i = 0; i < x.size(); ++i) {
    for (size_t j = 0; j < y.size(); ++j) {
      prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
    }
  }
  int dm = static_cast<int>(mod.size()) - 1;
  for (int i = static_cast<int>(prod.size()) - 1; i >= dm; --i) {
    int c = prod[i];
    if (c == 0) continue;
    for (int j = 0; j <= dm; ++j) {
      int idx = i - dm + j;
      prod[idx] = ((prod[idx] - c * mod[j]) % p + p) % p;
    }
  }
  prod.resize(dm);
  return prod;
}

FFElem mul_oracle(const Tower& t, const FFElem& x, const FFElem& y) {
  auto prod = poly_mul_mod(x.coeffs, y.coeffs, t.modulus(), t.p());
  FFElem r = t.zero();
  for (size_t i = 0; i < prod.size(); ++i) r.coeffs[i] = static_cast<u8>(prod[i]);
  return r;
}

FFElem pow_oracle(const Tower& t, FFElem base, u64 e) {
  FFElem r = t.one();
  while (e > 0) {
    if (e & 1) r = mul_oracle(t, r, base);
    base = mul_oracle(t, base, base);
    e >>= 1;
  }
  return r;
}

// Independent irreducibility oracle: a monic polynomial of degree d is
// reducible iff some monic polynomial of degree 1..d/2 divides it.
bool divides(const std::vector<int>& divisor, std::vector<int> f, int p) {
  auto inv = [&](int v) {
    for (int t = 1; t < p; ++t)
      if (t * v % p == 1) return t;
    return 0;
  };
  int dd = static_cast<int>(divisor.size()) - 1;
  int li = inv(divisor.back());
  while (static_cast<int>(f.size()) - 1 >= dd) {
    int c = f.back() * li % p;
    int shift = static_cast<int>(f.size()) - 1 - dd;
    for (int j = 0; j <= dd; ++j) {
      f[shift + j] = ((f[shift + j] - c * divisor[j]) % p + p) % p;
    }
    while (!f.empty() && f.back() == 0) f.pop_back();
    if (f.empty()) return true;
  }
  return f.empty();
}

bool irreducible_oracle(const std::vector<int>& f, int p) {
  int d = static_cast<int>(f.size()) - 1;
  for (int dd = 1; dd <= d / 2; ++dd) {
    // all monic divisor candidates of degree dd
    std::vector<int> cand(dd + 1, 0);
    cand[dd] = 1;
    u64 total = 1;
    for (int i = 0; i < dd; ++i) total *= p;
    for (u64 k = 0; k < total; ++k) {
      u64 v = k;
      for (int i = 0; i < dd; ++i) {
        cand[i] = static_cast<int>(v % p);
        v /= p;
      }
      if (divides(cand, f, p)) return false;
    }
  }
  return true;
}

FFElem random_elem(const Tower& t, std::mt19937& rng) {
  std::uniform_int_distribution<u32> dist(0, static_cast<u32>(t.size() - 1));
  return t.decode(dist(rng));
}

}  // namespace

TEST_CASE("construction rejects bad parameters") {
  CHECK_THROWS_AS(Tower::make(4, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(Tower::make(2, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(Tower::make(9, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(Tower::make(3, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(Tower::make(3, 1, 0), std::invalid_argument);
  // 3^24 elements blow the default cap
  CHECK_THROWS_AS(Tower::make(3, 1, 12), CapExceeded);
}

TEST_CASE("F_9 tower: frozen modulus, omega, orders") {
  Tower t = Tower::make(3, 1, 1);
  CHECK(t.modulus() == std::vector<u8>{1, 0, 1});  // x^2 + 1
  CHECK(t.omega().coeffs == std::vector<u8>{1, 1});  // 1 + x
  CHECK(t.mult_order(t.omega()) == 8);
  CHECK(t.size() == 9);
  CHECK(t.q() == 3);
}

TEST_CASE("F_25 tower: mu = omega^4 of order q+1") {
  Tower t = Tower::make(5, 1, 1);
  CHECK(t.modulus() == std::vector<u8>{1, 1, 1});  // x^2 + x + 1
  CHECK(t.mu() == t.omega_pow(4));
  CHECK(t.mult_order(t.mu()) == 6);
}

TEST_CASE("deg-4 modulus equals the brute-force lexicographic search") {
  // Oracle: scan monic quartics over F_3 in low-degree-first lexicographic
  // order and keep the first with no factor of degree 1 or 2.
  int p = 3;
  std::vector<int> found;
  for (int c0 = 0; c0 < p && found.empty(); ++c0) {
    for (int c1 = 0; c1 < p && found.empty(); ++c1) {
      for (int c2 = 0; c2 < p && found.empty(); ++c2) {
        for (int c3 = 0; c3 < p && found.empty(); ++c3) {
          std::vector<int> f{c0, c1, c2, c3, 1};
          if (irreducible_oracle(f, p)) found = f;
        }
      }
    }
  }
  CHECK(found == std::vector<int>{1, 0, 1, 1, 1});  // x^4 + x^3 + x^2 + 1

  Tower t = Tower::make(3, 1, 2);
  std::vector<int> got(t.modulus().begin(), t.modulus().end());
  CHECK(got == found);
}

TEST_CASE("field axioms on random triples, against the polynomial oracle") {
  for (auto [p, a, m] : {std::array<int, 3>{3, 1, 1}, {5, 1, 1}, {3, 1, 2}, {3, 2, 1}}) {
    CAPTURE(p);
    CAPTURE(a);
    CAPTURE(m);
    Tower t = Tower::make(p, a, m);
    std::mt19937 rng(12345);
    for (int i = 0; i < 200; ++i) {
      FFElem x = random_elem(t, rng), y = random_elem(t, rng), z = random_elem(t, rng);
      CHECK(t.mul(x, y) == mul_oracle(t, x, y));
      CHECK(t.mul(t.mul(x, y), z) == t.mul(x, t.mul(y, z)));
      CHECK(t.mul(x, t.add(y, z)) == t.add(t.mul(x, y), t.mul(x, z)));
      CHECK(t.is_zero(t.add(x, t.neg(x))));
      if (!t.is_zero(x)) CHECK(t.mul(x, t.inv(x)) == t.one());
    }
  }
}

TEST_CASE("frobenius") {
  Tower t5 = Tower::make(5, 1, 1);
  CHECK(t5.frobenius(t5.omega(), 1) == pow_oracle(t5, t5.omega(), 5));

  for (auto [p, a, m] : {std::array<int, 3>{5, 1, 1}, {3, 1, 2}, {3, 2, 1}}) {
    Tower t = Tower::make(p, a, m);
    // prime-field elements are fixed by every power
    for (int c = 0; c < p; ++c) {
      for (int k = 0; k <= 2 * m; ++k) CHECK(t.frobenius(t.from_base_int(c), k) == t.from_base_int(c));
    }
    // composition closes the Galois cycle
    std::mt19937 rng(999);
    for (int i = 0; i < 100; ++i) {
      FFElem x = random_elem(t, rng);
      CHECK(t.frobenius(t.frobenius(x, 1), 2 * m - 1) == x);
      CHECK(t.frobenius(x, 2 * m) == x);
      CHECK(t.frobenius(x, 1) == pow_oracle(t, x, t.q()));
    }
  }
}

TEST_CASE("trace to the base field") {
  for (auto [p, a, m] : {std::array<int, 3>{3, 1, 1}, {5, 1, 1}, {3, 1, 2}, {5, 1, 2}, {3, 2, 1}}) {
    CAPTURE(p);
    CAPTURE(a);
    CAPTURE(m);
    Tower t = Tower::make(p, a, m);
    CHECK(t.is_zero(t.trace_to_base(t.zero())));
    CHECK(t.trace_to_base(t.one()) == t.from_base_int(static_cast<u64>(2 * m)));

    // full agreement with the naive Frobenius power sum
    bool nonzero_seen = false;
    for (u64 enc = 0; enc < t.size(); ++enc) {
      FFElem x = t.decode(static_cast<u32>(enc));
      FFElem acc = t.zero();
      FFElem pw = x;
      for (int i = 0; i < 2 * m; ++i) {
        acc = t.add(acc, pw);
        pw = pow_oracle(t, pw, t.q());
      }
      CHECK(t.trace_to_base(x) == acc);
      CHECK(t.in_base_field(acc));
      if (!t.is_zero(acc)) nonzero_seen = true;
    }
    CHECK(nonzero_seen);
  }
}

TEST_CASE("trace fibers over F_9 have equal size") {
  Tower t = Tower::make(3, 1, 1);
  std::vector<int> fiber(3, 0);
  for (u64 enc = 0; enc < 9; ++enc) {
    FFElem tr = t.trace_to_base(t.decode(static_cast<u32>(enc)));
    ++fiber[tr.coeffs[0]];
  }
  CHECK(fiber == std::vector<int>{3, 3, 3});
}

TEST_CASE("subfield elements") {
  Tower t3 = Tower::make(3, 1, 1);
  auto prime = t3.subfield_elements(1);
  REQUIRE(prime.size() == 3);
  CHECK(prime[0] == t3.from_base_int(0));
  CHECK(prime[1] == t3.from_base_int(1));
  CHECK(prime[2] == t3.from_base_int(2));
  CHECK(t3.subfield_elements(2).size() == 9);

  Tower t52 = Tower::make(5, 1, 2);
  auto mid = t52.subfield_elements(2);
  REQUIRE(mid.size() == 25);
  for (const auto& x : mid) CHECK(t52.pow(x, 25) == x);
  CHECK_THROWS_AS(t52.subfield_elements(3), std::invalid_argument);
}

TEST_CASE("model constants") {
  for (auto [p, a, m] : {std::array<int, 3>{3, 1, 1}, {5, 1, 1}, {7, 1, 1}, {11, 1, 1},
                         {13, 1, 1}, {3, 1, 2}, {5, 1, 2}, {3, 2, 1}}) {
    CAPTURE(p);
    CAPTURE(a);
    CAPTURE(m);
    Tower t = Tower::make(p, a, m);
    CHECK(t.frobenius(t.epsilon(), m) == t.neg(t.epsilon()));
    CHECK(t.mult_order(t.mu()) == t.qm() + 1);
    u64 group = t.size() - 1;
    u64 lam_exp = (t.q() - 1) / 2;
    CHECK(t.mult_order(t.lambda()) == group / std::gcd(group, lam_exp));
  }
}

TEST_CASE("construction is deterministic") {
  Tower t1 = Tower::make(3, 1, 2);
  Tower t2 = Tower::make(3, 1, 2);
  CHECK(t1.modulus() == t2.modulus());
  CHECK(t1.omega() == t2.omega());
  CHECK(t1.dlog_table() == t2.dlog_table());
  CHECK(t1.antilog_table() == t2.antilog_table());
}

TEST_CASE("scalar codes and power-basis coordinates round-trip") {
  for (auto [p, a, m] : {std::array<int, 3>{5, 1, 1}, {3, 1, 2}, {3, 2, 1}}) {
    CAPTURE(p);
    CAPTURE(a);
    CAPTURE(m);
    Tower t = Tower::make(p, a, m);
    const auto& fq = t.fq();
    for (u64 c = 0; c < t.q(); ++c) {
      Fq code = static_cast<Fq>(c);
      CHECK(t.scalar_from_elem(t.elem_from_scalar(code)) == code);
      CHECK(fq.from_digits(fq.digits(code)) == code);
    }
    // code 0 and 1 are pinned to zero and one
    CHECK(t.elem_from_scalar(0) == t.zero());
    CHECK(t.elem_from_scalar(1) == t.one());

    for (u64 enc = 0; enc < t.size(); ++enc) {
      FFElem x = t.decode(static_cast<u32>(enc));
      CHECK(t.from_coords(t.coords(x)) == x);
    }
  }
}

TEST_CASE("scalar tables agree with tower arithmetic") {
  Tower t = Tower::make(3, 2, 1);  // q = 9, exercises a > 1
  const auto& fq = t.fq();
  REQUIRE(fq.q() == 9);
  for (u64 x = 0; x < 9; ++x) {
    for (u64 y = 0; y < 9; ++y) {
      FFElem ex = t.elem_from_scalar(static_cast<Fq>(x));
      FFElem ey = t.elem_from_scalar(static_cast<Fq>(y));
      CHECK(t.elem_from_scalar(fq.add(static_cast<Fq>(x), static_cast<Fq>(y))) == t.add(ex, ey));
      CHECK(t.elem_from_scalar(fq.mul(static_cast<Fq>(x), static_cast<Fq>(y))) == t.mul(ex, ey));
    }
  }
  CHECK_THROWS_AS(fq.inv(0), std::domain_error);
  CHECK_THROWS_AS(t.scalar_from_elem(t.omega()), std::domain_error);
}
