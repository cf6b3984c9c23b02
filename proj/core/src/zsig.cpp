#include "symspread/zsig.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>

namespace symspread {

bool is_prime(u64 n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  if (n % 3 == 0) return n == 3;
  for (u64 d = 5; d * d <= n; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

std::vector<std::pair<u64, int>> factorize(u64 n) {
  std::vector<std::pair<u64, int>> out;
  if (n < 2) return out;
  auto strip = [&](u64 d) {
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e > 0) out.emplace_back(d, e);
  };
  strip(2);
  strip(3);
  for (u64 d = 5; d * d <= n; d += 6) {
    strip(d);
    strip(d + 2);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

u64 checked_pow(u64 base, u64 exp) {
  u64 r = 1;
  for (u64 i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<u64>::max() / base) {
      throw std::overflow_error("checked_pow: overflow");
    }
    r *= base;
  }
  return r;
}

namespace {

u64 mulmod(u64 x, u64 y, u64 mod) {
  return static_cast<u64>((static_cast<unsigned __int128>(x) * y) % mod);
}

u64 powmod(u64 base, u64 exp, u64 mod) {
  u64 r = 1 % mod;
  base %= mod;
  while (exp > 0) {
    if (exp & 1) r = mulmod(r, base, mod);
    base = mulmod(base, base, mod);
    exp >>= 1;
  }
  return r;
}

}  // namespace

u64 mult_order_mod(u64 q, u64 r) {
  if (r < 2) throw std::domain_error("mult_order_mod: modulus must be >= 2");
  if (std::gcd(q, r) != 1) {
    throw std::domain_error("mult_order_mod: arguments are not coprime");
  }
  // Order divides the group order; walk the divisor lattice of lambda(r)
  // via the factored Euler phi when r is prime, else fall back to a scan.
  if (is_prime(r)) {
    u64 ord = r - 1;
    for (const auto& [f, e] : factorize(r - 1)) {
      for (int i = 0; i < e; ++i) {
        if (powmod(q, ord / f, r) == 1) ord /= f;
      }
    }
    return ord;
  }
  u64 x = q % r;
  u64 ord = 1;
  while (x != 1) {
    x = mulmod(x, q % r, r);
    ++ord;
  }
  return ord;
}

ZsigResult zsigmondy_primes(u64 q, int n) {
  if (n < 1) throw std::domain_error("zsigmondy_primes: n must be >= 1");
  auto qf = factorize(q);
  if (qf.size() != 1 || qf[0].first == 2) {
    throw std::domain_error("zsigmondy_primes: q must be a power of an odd prime");
  }
  u64 big = checked_pow(q, static_cast<u64>(n));
  u64 value = big - 1;

  ZsigResult res;
  res.q = q;
  res.n = n;
  for (const auto& [r, e] : factorize(value)) {
    if (r == qf[0].first) continue;  // cannot occur, q^n == 1 never mod p
    u64 ord = mult_order_mod(q, r);
    if (ord == static_cast<u64>(n)) {
      u64 rpart = 1;
      for (int i = 0; i < e; ++i) rpart *= r;
      res.primes.push_back({r, ord, rpart});
    }
  }
  return res;
}

FermatExceptionReport fermat_exception_check(u64 q, int b) {
  if (b < 0) throw std::domain_error("fermat_exception_check: b must be >= 0");
  if (b > 5) throw std::domain_error("fermat_exception_check: exponent tower too large");
  u64 half = checked_pow(2, static_cast<u64>(b));
  u64 value = checked_pow(q, half) + 1;

  FermatExceptionReport rep;
  rep.q = q;
  rep.b = b;
  rep.value = value;
  rep.factors = factorize(value);

  rep.all_odd_primes_primitive = true;
  for (const auto& [r, e] : rep.factors) {
    if (r == 2) continue;
    rep.odd_primes.push_back(r);
    if (mult_order_mod(q, r) != 2 * half) rep.all_odd_primes_primitive = false;
  }

  // Exceptional shape: q^{2^b} + 1 = 2 r^t with r the Fermat prime 2^{b+1}+1.
  rep.fermat_exception = false;
  if (rep.factors.size() == 2 && rep.factors[0].first == 2 &&
      rep.factors[0].second == 1) {
    u64 r = rep.factors[1].first;
    if (r == 2 * half + 1 && is_prime(r)) rep.fermat_exception = true;
  }
  return rep;
}

}  // namespace symspread
