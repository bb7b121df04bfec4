#include "quadorder/arith.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <string>

#include "quadorder/errors.hpp"

namespace quadorder {

namespace {

constexpr std::uint64_t kTrialLimit = 1'000'000;
constexpr std::size_t kMaxDivisors = 1'000'000;

// Exact for every n < 2^64 (first twelve primes as witnesses).
constexpr std::array<std::uint64_t, 12> kWitnesses = {2,  3,  5,  7,  11, 13,
                                                      17, 19, 23, 29, 31, 37};

const std::vector<std::uint64_t>& trial_primes() {
  static const std::vector<std::uint64_t> primes = primes_up_to(kTrialLimit);
  return primes;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

// One Brent-cycle rho attempt with polynomial x^2 + c; may return n itself.
std::uint64_t rho_attempt(std::uint64_t n, std::uint64_t c) {
  auto step = [n, c](std::uint64_t v) {
    std::uint64_t s = mulmod_u64(v, v, n) + c;
    return s >= n ? s - n : s;
  };
  std::uint64_t y = 2, x = 2, ys = 2, q = 1, g = 1, r = 1;
  const std::uint64_t batch = 128;
  while (g == 1) {
    x = y;
    for (std::uint64_t i = 0; i < r; ++i) y = step(y);
    std::uint64_t k = 0;
    while (k < r && g == 1) {
      ys = y;
      const std::uint64_t lim = std::min(batch, r - k);
      for (std::uint64_t i = 0; i < lim; ++i) {
        y = step(y);
        q = mulmod_u64(q, x > y ? x - y : y - x, n);
      }
      g = gcd_u64(q, n);
      k += batch;
    }
    r <<= 1;
  }
  if (g == n) {
    // The batched product collapsed; retrace one step at a time.
    do {
      ys = step(ys);
      g = gcd_u64(x > ys ? x - ys : ys - x, n);
    } while (g == 1);
  }
  return g;
}

std::uint64_t rho_factor(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t g = rho_attempt(n, c);
    if (g != n && g != 1) return g;
  }
}

void factor_recursive(std::uint64_t n, std::map<std::uint64_t, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  std::uint64_t g = rho_factor(n);
  factor_recursive(g, out);
  factor_recursive(n / g, out);
}

// C(nd, kd) mod q for digits nd, kd < q.
std::uint64_t binom_digit(std::uint64_t nd, std::uint64_t kd, std::uint64_t q) {
  if (kd > nd) return 0;
  kd = std::min(kd, nd - kd);
  std::uint64_t num = 1, den = 1;
  for (std::uint64_t i = 0; i < kd; ++i) {
    num = mulmod_u64(num, (nd - i) % q, q);
    den = mulmod_u64(den, (i + 1) % q, q);
  }
  // den is a unit mod q: every factor lies in [1, q).
  return mulmod_u64(num, powmod_u64(den, q - 2, q), q);
}

}  // namespace

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(
      static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp,
                         std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod_u64(result, base, m);
    base = mulmod_u64(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : kWitnesses) {
    if (n % p == 0) return n == p;
  }
  // Here n > 37 and coprime to every witness, so all bases are proper.
  std::uint64_t d = n - 1;
  unsigned r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (std::uint64_t a : kWitnesses) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < r; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeFactorization factorize(std::uint64_t n) {
  if (n == 0) throw DomainError("factorize: n must be >= 1");
  std::map<std::uint64_t, unsigned> acc;
  std::uint64_t rem = n;
  for (std::uint64_t p : trial_primes()) {
    if (p * p > rem) break;
    while (rem % p == 0) {
      rem /= p;
      ++acc[p];
    }
  }
  if (rem > 1) factor_recursive(rem, acc);
  PrimeFactorization out;
  out.factors.assign(acc.begin(), acc.end());
  return out;
}

PrimeFactorization factorize(const mpz_class& n) {
  if (n < 1) throw DomainError("factorize: n must be >= 1");
  if (mpz_sizeinbase(n.get_mpz_t(), 2) > 64) {
    throw CapacityError(
        "factorize: " + n.get_str() +
        " exceeds the 64-bit factorization bound; supply the index "
        "pre-factored as q1^k1*q2^k2");
  }
  return factorize(mpz_get_ui(n.get_mpz_t()));
}

mpz_class PrimeFactorization::value() const {
  mpz_class v = 1;
  mpz_class pw;
  for (const auto& [p, e] : factors) {
    mpz_class base = static_cast<unsigned long>(p);
    mpz_pow_ui(pw.get_mpz_t(), base.get_mpz_t(), e);
    v *= pw;
  }
  return v;
}

int legendre(const mpz_class& a, std::uint64_t p) {
  if (p < 3 || !is_prime(p))
    throw DomainError("legendre: p must be an odd prime");
  std::uint64_t r = mpz_fdiv_ui(a.get_mpz_t(), p);  // nonnegative remainder
  std::uint64_t e = powmod_u64(r, (p - 1) / 2, p);
  if (e == 0) return 0;
  return e == 1 ? 1 : -1;
}

std::vector<mpz_class> divisors_ascending(const PrimeFactorization& f) {
  std::size_t count = 1;
  for (const auto& [p, e] : f.factors) {
    count *= e + 1;
    if (count > kMaxDivisors)
      throw CapacityError("divisors_ascending: divisor count exceeds " +
                          std::to_string(kMaxDivisors));
  }
  std::vector<mpz_class> divs;
  divs.reserve(count);
  divs.emplace_back(1);
  for (const auto& [p, e] : f.factors) {
    const std::size_t base_count = divs.size();
    mpz_class pw = 1;
    for (unsigned i = 1; i <= e; ++i) {
      pw *= static_cast<unsigned long>(p);
      for (std::size_t j = 0; j < base_count; ++j)
        divs.push_back(divs[j] * pw);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

std::uint64_t binom_mod(const mpz_class& n, const mpz_class& k,
                        std::uint64_t q) {
  if (!is_prime(q)) throw DomainError("binom_mod: q must be prime");
  if (n < 0 || k < 0)
    throw DomainError("binom_mod: n and k must be nonnegative");
  if (k > n) throw DomainError("binom_mod: k must satisfy k <= n");
  mpz_class nn = n, kk = k;
  std::uint64_t result = 1 % q;
  while (nn > 0 || kk > 0) {
    std::uint64_t nd = mpz_fdiv_q_ui(nn.get_mpz_t(), nn.get_mpz_t(), q);
    std::uint64_t kd = mpz_fdiv_q_ui(kk.get_mpz_t(), kk.get_mpz_t(), q);
    if (kd > nd) return 0;
    result = mulmod_u64(result, binom_digit(nd, kd, q), q);
  }
  return result;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  if (limit > 0xFFFFFFFFull)
    throw CapacityError("primes_up_to: sieve limit capped at 2^32");
  std::vector<std::uint64_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i * i <= limit; ++i) {
    if (composite[i]) continue;
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (!composite[i]) primes.push_back(i);
  }
  return primes;
}

}  // namespace quadorder
