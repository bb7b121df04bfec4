#include "quadorder/laorder.hpp"

#include <algorithm>
#include <stdexcept>

#include "quadorder/errors.hpp"

namespace quadorder {

namespace {

std::int64_t mod8(std::int64_t d) { return ((d % 8) + 8) % 8; }

void merge(PrimeFactorization& into, std::uint64_t prime, unsigned exp) {
  if (exp == 0) return;
  for (auto& [p, e] : into.factors) {
    if (p == prime) {
      e += exp;
      return;
    }
  }
  into.factors.emplace_back(prime, exp);
}

void merge(PrimeFactorization& into, const PrimeFactorization& part,
           unsigned scale = 1) {
  for (const auto& [p, e] : part.factors) merge(into, p, e * scale);
}

}  // namespace

mpz_class l_function(const PrimeFactorization& n_factored, std::int64_t d) {
  mpz_class result = 1;
  mpz_class pw;
  for (const auto& [p, k] : n_factored.factors) {
    if (p == 2) {
      const std::int64_t dm8 = mod8(d);
      mpz_class two = 2;
      if (dm8 == 1) {
        mpz_pow_ui(pw.get_mpz_t(), two.get_mpz_t(), k - 1);
      } else if (dm8 == 5) {
        mpz_pow_ui(pw.get_mpz_t(), two.get_mpz_t(), k - 1);
        pw *= 3;
      } else {
        mpz_pow_ui(pw.get_mpz_t(), two.get_mpz_t(), k);
      }
      result *= pw;
    } else {
      const int chi = legendre(mpz_class{static_cast<long>(d)}, p);
      mpz_class base = static_cast<unsigned long>(p);
      mpz_pow_ui(pw.get_mpz_t(), base.get_mpz_t(), k - 1);
      result *= pw;
      // p - chi stays within 64 bits: the largest 64-bit prime is 2^64 - 59.
      result *= mpz_class{static_cast<unsigned long>(
          chi >= 0 ? p - static_cast<std::uint64_t>(chi) : p + 1)};
    }
  }
  return result;
}

mpz_class l_function(const mpz_class& n, std::int64_t d) {
  if (n == 0) throw DomainError("l_function: n must be >= 1");
  return l_function(factorize(n), d);
}

PrimeFactorization l_function_factored(const PrimeFactorization& n_factored,
                                       std::int64_t d) {
  PrimeFactorization out;
  for (const auto& [p, k] : n_factored.factors) {
    if (p == 2) {
      const std::int64_t dm8 = mod8(d);
      if (dm8 == 1) {
        merge(out, 2, k - 1);
      } else if (dm8 == 5) {
        merge(out, 2, k - 1);
        merge(out, 3, 1);
      } else {
        merge(out, 2, k);
      }
    } else {
      const int chi = legendre(mpz_class{static_cast<long>(d)}, p);
      merge(out, p, k - 1);
      const std::uint64_t local =
          chi >= 0 ? p - static_cast<std::uint64_t>(chi) : p + 1;
      merge(out, factorize(local));
    }
  }
  std::sort(out.factors.begin(), out.factors.end());
  return out;
}

bool in_order(const QuadInt& v, const mpz_class& n) {
  if (n < 1) throw DomainError("in_order: n must be >= 1");
  return mpz_divisible_p(v.y.get_mpz_t(), n.get_mpz_t()) != 0;
}

bool in_order(const ModQuadInt& v, const mpz_class& n) {
  if (v.modulus != n)
    throw DomainError("in_order: residue modulus " + v.modulus.get_str() +
                      " does not match n = " + n.get_str());
  return v.y == 0;  // coordinates are stored reduced into [0, n)
}

MinPowerResult minimal_unit_power(const PrimeFactorization& n_factored,
                                  std::int64_t d) {
  const FieldDesc field = make_field(d);
  const mpz_class n = n_factored.value();
  const PrimeFactorization lf = l_function_factored(n_factored, d);
  const mpz_class l = lf.value();
  const QuadInt& u = fundamental_unit(field);
  for (const mpz_class& e : divisors_ascending(lf)) {
    if (in_order(pow_mod(u, e, n), n)) {
      return MinPowerResult{n, d, l, e, e == l};
    }
  }
  // u^L always lands in R_n, so the loop cannot fall through.
  throw std::logic_error("minimal_unit_power: no divisor of L admitted u^e");
}

MinPowerResult minimal_unit_power(const mpz_class& n, std::int64_t d) {
  return minimal_unit_power(factorize(n), d);
}

bool is_locally_associated_direct(const PrimeFactorization& n_factored,
                                  std::int64_t d) {
  return minimal_unit_power(n_factored, d).locally_associated;
}

bool is_locally_associated_direct(const mpz_class& n, std::int64_t d) {
  return minimal_unit_power(n, d).locally_associated;
}

}  // namespace quadorder
