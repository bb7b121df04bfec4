#include "quadorder/quadfield.hpp"

#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>

#include "quadorder/arith.hpp"
#include "quadorder/errors.hpp"

namespace quadorder {

namespace {

void require_same_field(const FieldDesc& a, const FieldDesc& b) {
  if (!(a == b))
    throw DomainError("quadfield: operands belong to different fields (d=" +
                      std::to_string(a.d) + " vs d=" + std::to_string(b.d) +
                      ")");
}

mpz_class fdiv_r(const mpz_class& a, const mpz_class& n) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
  return r;
}

// Builds (c + e*sqrt(d))/2 as x + y*alpha; c and e must have equal parity in a
// half-basis field and both be even otherwise.
QuadInt from_half_coords(const FieldDesc& f, const mpz_class& c,
                         const mpz_class& e) {
  if (f.half_basis) {
    mpz_class x = c - e;
    if (mpz_odd_p(x.get_mpz_t()))
      throw DomainError("quadfield: (c + e*sqrt(d))/2 is not integral");
    x /= 2;
    return QuadInt{f, x, e};
  }
  if (mpz_odd_p(c.get_mpz_t()) || mpz_odd_p(e.get_mpz_t()))
    throw DomainError("quadfield: (c + e*sqrt(d))/2 is not integral");
  return QuadInt{f, c / 2, e / 2};
}

QuadInt compute_fundamental_unit(const FieldDesc& f) {
  const std::uint64_t d = static_cast<std::uint64_t>(f.d);
  if (f.half_basis && f.d < 17) {
    // d in {5, 13}: the minimal a^2 - d*b^2 = +-4 solution can sit below the
    // first sqrt(d) convergent (d=5: (1,1)), so search directly.  Units grow
    // with b, and for fixed b the -4 branch gives the smaller a.
    for (mpz_class b = 1;; ++b) {
      for (int delta : {-4, 4}) {
        mpz_class t = b * b;
        t *= f.d;
        t += delta;
        if (t > 0 && mpz_perfect_square_p(t.get_mpz_t())) {
          return from_half_coords(f, sqrt(t), b);
        }
      }
    }
  }
  // Every unit appears among the convergents of sqrt(d): the +-1 solutions
  // always, the odd +-4 solutions whenever 4 < sqrt(d).  The first convergent
  // with residual +-1 (or +-4 in a half-basis field) is the fundamental unit.
  SqrtConvergents cf(d);
  for (;;) {
    mpz_class r = cf.residual();
    mpz_class ar = abs(r);
    if (ar == 1) {
      if (f.half_basis)
        return from_half_coords(f, 2 * cf.p(), 2 * cf.q());
      return QuadInt{f, cf.p(), cf.q()};
    }
    if (f.half_basis && ar == 4) return from_half_coords(f, cf.p(), cf.q());
    cf.advance();
  }
}

std::shared_mutex g_unit_mutex;
std::map<std::int64_t, QuadInt> g_unit_cache;

}  // namespace

FieldDesc make_field(std::int64_t d) {
  if (d <= 1) throw DomainError("make_field: d must be an integer > 1");
  PrimeFactorization f = factorize(static_cast<std::uint64_t>(d));
  for (const auto& [p, e] : f.factors) {
    if (e > 1)
      throw DomainError("make_field: d must be squarefree (" +
                        std::to_string(p) + "^2 divides " + std::to_string(d) +
                        ")");
  }
  FieldDesc out;
  out.d = d;
  out.half_basis = (d % 4 == 1);
  out.trace_coeff = out.half_basis ? 1 : 0;
  out.const_coeff = out.half_basis ? (d - 1) / 4 : d;
  return out;
}

mpz_class norm(const QuadInt& v) {
  // N(x + y*alpha) = x^2 + t*x*y - c*y^2 for alpha^2 = t*alpha + c.
  return v.x * v.x + v.field.trace_coeff * v.x * v.y -
         v.field.const_coeff * v.y * v.y;
}

QuadInt mul(const QuadInt& a, const QuadInt& b) {
  require_same_field(a.field, b.field);
  mpz_class yy = a.y * b.y;
  return QuadInt{a.field, a.x * b.x + a.field.const_coeff * yy,
                 a.x * b.y + a.y * b.x + a.field.trace_coeff * yy};
}

QuadInt pow(const QuadInt& a, const mpz_class& k) {
  if (k < 0) throw DomainError("pow: exponent must be nonnegative");
  QuadInt result{a.field, 1, 0};
  const std::size_t bits = mpz_sizeinbase(k.get_mpz_t(), 2);
  if (k == 0) return result;
  for (std::size_t i = bits; i-- > 0;) {
    result = mul(result, result);
    if (mpz_tstbit(k.get_mpz_t(), i)) result = mul(result, a);
  }
  return result;
}

std::pair<mpz_class, mpz_class> half_sqrt_coords(const QuadInt& v) {
  if (v.field.half_basis) return {2 * v.x + v.y, v.y};
  return {2 * v.x, 2 * v.y};
}

std::optional<std::pair<mpz_class, mpz_class>> integral_sqrt_coords(
    const QuadInt& v) {
  auto [c, e] = half_sqrt_coords(v);
  if (mpz_odd_p(c.get_mpz_t()) || mpz_odd_p(e.get_mpz_t()))
    return std::nullopt;
  return std::pair<mpz_class, mpz_class>{c / 2, e / 2};
}

ModQuadInt reduce(const QuadInt& v, const mpz_class& modulus) {
  if (modulus < 1) throw DomainError("reduce: modulus must be >= 1");
  return ModQuadInt{v.field, modulus, fdiv_r(v.x, modulus),
                    fdiv_r(v.y, modulus)};
}

ModQuadInt mul(const ModQuadInt& a, const ModQuadInt& b) {
  require_same_field(a.field, b.field);
  if (a.modulus != b.modulus)
    throw DomainError("quadfield: operands carry different moduli (" +
                      a.modulus.get_str() + " vs " + b.modulus.get_str() +
                      ")");
  mpz_class yy = a.y * b.y;
  return ModQuadInt{
      a.field, a.modulus,
      fdiv_r(a.x * b.x + a.field.const_coeff * yy, a.modulus),
      fdiv_r(a.x * b.y + a.y * b.x + a.field.trace_coeff * yy, a.modulus)};
}

ModQuadInt pow_mod(const QuadInt& base, const mpz_class& exponent,
                   const mpz_class& modulus) {
  if (exponent < 0) throw DomainError("pow_mod: exponent must be nonnegative");
  ModQuadInt result = reduce(QuadInt{base.field, 1, 0}, modulus);
  if (exponent == 0) return result;
  ModQuadInt b = reduce(base, modulus);
  const std::size_t bits = mpz_sizeinbase(exponent.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = mul(result, result);
    if (mpz_tstbit(exponent.get_mpz_t(), i)) result = mul(result, b);
  }
  return result;
}

SqrtConvergents::SqrtConvergents(std::uint64_t d) {
  d_ = mpz_class{static_cast<unsigned long>(d)};
  mpz_sqrt(a0_.get_mpz_t(), d_.get_mpz_t());
  if (a0_ * a0_ == d_)
    throw DomainError("SqrtConvergents: d must not be a perfect square");
  a_ = a0_;
  p_ = a0_;
}

void SqrtConvergents::advance() {
  P_ = a_ * Q_ - P_;
  Q_ = (d_ - P_ * P_) / Q_;  // exact: Q | d - P^2 is the loop invariant
  a_ = (a0_ + P_) / Q_;
  mpz_class pn = a_ * p_ + pm1_;
  pm1_ = p_;
  p_ = pn;
  mpz_class qn = a_ * q_ + qm1_;
  qm1_ = q_;
  q_ = qn;
}

mpz_class SqrtConvergents::residual() const { return p_ * p_ - d_ * q_ * q_; }

const QuadInt& fundamental_unit(const FieldDesc& f) {
  {
    std::shared_lock lock(g_unit_mutex);
    auto it = g_unit_cache.find(f.d);
    if (it != g_unit_cache.end()) return it->second;
  }
  QuadInt u = compute_fundamental_unit(f);
  std::unique_lock lock(g_unit_mutex);
  // try_emplace keeps the first computed value if another thread raced us;
  // node-based storage keeps returned references stable under later inserts.
  auto [it, inserted] = g_unit_cache.try_emplace(f.d, std::move(u));
  return it->second;
}

std::vector<QuadInt> unit_cache_entries() {
  std::shared_lock lock(g_unit_mutex);
  std::vector<QuadInt> out;
  out.reserve(g_unit_cache.size());
  for (const auto& [d, u] : g_unit_cache) out.push_back(u);
  return out;
}

void unit_cache_store(const QuadInt& unit) {
  std::unique_lock lock(g_unit_mutex);
  g_unit_cache.insert_or_assign(unit.field.d, unit);
}

void unit_cache_clear() {
  std::unique_lock lock(g_unit_mutex);
  g_unit_cache.clear();
}

}  // namespace quadorder
