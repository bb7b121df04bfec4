#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace quadorder {

// Factorization into primes, strictly ascending, every exponent >= 1.
// The factorization of 1 is the empty list.  Primes are confined to 64 bits;
// the factored value itself may exceed them (pre-factored indices).
struct PrimeFactorization {
  std::vector<std::pair<std::uint64_t, unsigned>> factors;

  mpz_class value() const;

  friend bool operator==(const PrimeFactorization&,
                         const PrimeFactorization&) = default;
};

// Deterministic primality over the whole 64-bit range: small-prime screening
// followed by Miller-Rabin with a fixed witness set that is exact below 2^64.
bool is_prime(std::uint64_t n);

// Trial division by primes below 10^6, then Brent-cycle Pollard rho on what
// remains.  n must be >= 1.
PrimeFactorization factorize(std::uint64_t n);

// Same, but throws CapacityError for n >= 2^64.  Larger indices must arrive
// pre-factored (see the CLI's q1^k1*q2^k2 input form).
PrimeFactorization factorize(const mpz_class& n);

// Legendre symbol (a|p) via Euler's criterion; p must be an odd prime.
int legendre(const mpz_class& a, std::uint64_t p);

// Every divisor of the factored value, strictly ascending, starting at 1.
std::vector<mpz_class> divisors_ascending(const PrimeFactorization& f);

// C(n,k) mod prime q through the base-q digit decomposition (Lucas); the full
// binomial coefficient is never expanded.  Requires 0 <= k <= n.
std::uint64_t binom_mod(const mpz_class& n, const mpz_class& k,
                        std::uint64_t q);

// 64-bit modular helpers shared across modules.
std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp,
                         std::uint64_t m);

// Ascending primes <= limit (plain sieve; limit capped at 2^32).
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

}  // namespace quadorder
