#pragma once

#include <cstdint>

#include <gmpxx.h>

#include "quadorder/arith.hpp"
#include "quadorder/quadfield.hpp"

namespace quadorder {

// Outcome of the direct membership search: m is the least exponent with
// u^m in R_n = Z[n*alpha], and R_n is locally associated iff m = L(n,d).
// The minimality search only needs to walk the divisors of L(n,d), since m
// always divides it.
struct MinPowerResult {
  mpz_class n;
  std::int64_t d{};
  mpz_class l_value;
  mpz_class m;
  bool locally_associated{};
};

// Multiplicative index function L(n,d), assembled from the factorization of n:
//   L(1,d) = 1
//   L(2^k,d) = 2^(k-1), 3*2^(k-1), 2^k  for d = 1, 5, other (mod 8)
//   L(p^k,d) = p^(k-1) * (p - (d|p))    for odd primes p
// Any integer d is accepted here; the order-membership operations below
// require a valid field (d > 1 squarefree).
mpz_class l_function(const PrimeFactorization& n_factored, std::int64_t d);
mpz_class l_function(const mpz_class& n, std::int64_t d);  // factorizes n

// L(n,d) as a factorization, so its divisors can be enumerated without
// factoring a wide product: each local contribution is at most 64 bits.
PrimeFactorization l_function_factored(const PrimeFactorization& n_factored,
                                       std::int64_t d);

// Membership of x + y*alpha in R_n: n | y.
bool in_order(const QuadInt& v, const mpz_class& n);
bool in_order(const ModQuadInt& v, const mpz_class& n);  // modulus must be n

// Least power of the fundamental unit inside R_n, found by testing divisors
// of L(n,d) in ascending order against the mod-n powering of the unit.
MinPowerResult minimal_unit_power(const PrimeFactorization& n_factored,
                                  std::int64_t d);
MinPowerResult minimal_unit_power(const mpz_class& n, std::int64_t d);

bool is_locally_associated_direct(const PrimeFactorization& n_factored,
                                  std::int64_t d);
bool is_locally_associated_direct(const mpz_class& n, std::int64_t d);

}  // namespace quadorder
