#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace quadorder {

// Real quadratic field Q[sqrt(d)] together with the multiplication rule of its
// ring of integers: alpha^2 = trace_coeff*alpha + const_coeff, where
//   alpha = (1+sqrt(d))/2  when d = 1 (mod 4)   (half_basis)
//   alpha = sqrt(d)        otherwise.
struct FieldDesc {
  std::int64_t d{};
  bool half_basis{};
  int trace_coeff{};
  std::int64_t const_coeff{};

  friend bool operator==(const FieldDesc&, const FieldDesc&) = default;
};

// Validates d > 1 and squarefree.
FieldDesc make_field(std::int64_t d);

// x + y*alpha in the ring of integers of the field.
struct QuadInt {
  FieldDesc field;
  mpz_class x;
  mpz_class y;

  friend bool operator==(const QuadInt&, const QuadInt&) = default;
};

mpz_class norm(const QuadInt& v);
QuadInt mul(const QuadInt& a, const QuadInt& b);  // rejects mixed fields
QuadInt pow(const QuadInt& a, const mpz_class& k);

// (c, e) with v = (c + e*sqrt(d))/2; always representable.
std::pair<mpz_class, mpz_class> half_sqrt_coords(const QuadInt& v);

// (a, b) with v = a + b*sqrt(d) when v lies in Z[sqrt(d)], otherwise empty.
std::optional<std::pair<mpz_class, mpz_class>> integral_sqrt_coords(
    const QuadInt& v);

// Residue x + y*alpha mod n, coordinates stored reduced into [0, n).  Each
// value carries its own modulus; arithmetic across moduli is refused.
struct ModQuadInt {
  FieldDesc field;
  mpz_class modulus;
  mpz_class x;
  mpz_class y;

  friend bool operator==(const ModQuadInt&, const ModQuadInt&) = default;
};

ModQuadInt reduce(const QuadInt& v, const mpz_class& modulus);
ModQuadInt mul(const ModQuadInt& a, const ModQuadInt& b);
ModQuadInt pow_mod(const QuadInt& base, const mpz_class& exponent,
                   const mpz_class& modulus);

// Continued-fraction expansion of sqrt(d) (d not a perfect square) with the
// running convergent p/q.  Construction lands on the 0th convergent.
class SqrtConvergents {
 public:
  explicit SqrtConvergents(std::uint64_t d);

  void advance();
  const mpz_class& p() const { return p_; }
  const mpz_class& q() const { return q_; }
  mpz_class residual() const;  // p^2 - d*q^2 at the current convergent

 private:
  mpz_class d_;
  mpz_class a0_;
  mpz_class P_{0};
  mpz_class Q_{1};
  mpz_class a_;
  mpz_class pm1_{1};
  mpz_class p_;
  mpz_class qm1_{0};
  mpz_class q_{1};
};

// Fundamental unit > 1 of the ring of integers, computed from the continued
// fraction of sqrt(d).  For half-basis fields the convergents are scanned for
// the minimal x^2 - d*y^2 = +-4 solution, which can precede the +-1 one.
// Results are memoized per d; the cache tolerates concurrent readers.
const QuadInt& fundamental_unit(const FieldDesc& f);

// Cache maintenance (used by the persistent unit cache in the tables module).
std::vector<QuadInt> unit_cache_entries();       // ascending by d
void unit_cache_store(const QuadInt& unit);      // insert or overwrite
void unit_cache_clear();                         // not safe vs concurrent use

}  // namespace quadorder
