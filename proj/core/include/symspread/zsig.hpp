#pragma once

#include <utility>
#include <vector>

#include "symspread/common.hpp"

namespace symspread {

/// Deterministic trial-division primality; adequate up to ~10^12 at our scale.
bool is_prime(u64 n);

/// Trial-division factorization, factors sorted ascending as (prime, exponent).
std::vector<std::pair<u64, int>> factorize(u64 n);

/// p^e with overflow detection; throws std::overflow_error.
u64 checked_pow(u64 base, u64 exp);

/// Least k >= 1 with q^k == 1 mod r. Requires gcd(q, r) = 1 (throws
/// std::domain_error otherwise). For prime r the result divides r - 1.
u64 mult_order_mod(u64 q, u64 r);

struct ZsigPrime {
  u64 r;       // the prime
  u64 order;   // multiplicative order of q mod r (equals n by definition)
  u64 r_part;  // full r-part of q^n - 1
  friend bool operator==(const ZsigPrime&, const ZsigPrime&) = default;
};

struct ZsigResult {
  u64 q = 0;
  int n = 0;
  std::vector<ZsigPrime> primes;  // sorted by r
};

/// All primes r dividing q^n - 1 with r dividing no q^j - 1 for 1 <= j < n.
/// q must be a power of an odd prime; n >= 1. For n = 1 the divisor condition
/// is vacuous, so every prime divisor of q - 1 qualifies.
ZsigResult zsigmondy_primes(u64 q, int n);

struct FermatExceptionReport {
  u64 q = 0;
  int b = 0;
  u64 value = 0;                                // q^{2^b} + 1
  std::vector<std::pair<u64, int>> factors;     // factorization of value
  std::vector<u64> odd_primes;                  // odd prime divisors
  bool all_odd_primes_primitive = false;        // each has order 2^{b+1} mod q
  bool fermat_exception = false;                // value == 2 * r^t, r == 2^{b+1}+1 prime
};

/// Factors q^{2^b} + 1, confirms every odd prime divisor has multiplicative
/// order 2^{b+1} (so divides no smaller q^j - 1), and flags the configuration
/// where the only odd prime divisor is the Fermat prime 2^{b+1} + 1 and
/// q^{2^b} + 1 = 2 r^t.
FermatExceptionReport fermat_exception_check(u64 q, int b);

}  // namespace symspread
