#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "quadorder/arith.hpp"
#include "quadorder/laorder.hpp"

namespace quadorder {

// Which rule decided a prime-power verdict.  Case1..Case9 are the fast
// classification cases for prime d; the rest cover the trivial L = 1 index,
// tower descent, the coprime-index combiner, the plain oracle fallback, and
// the three families that only the oracle can settle.
enum class RuleTag {
  Case1,
  Case2,
  Case3,
  Case4,
  Case5,
  Case6,
  Case7,
  Case8,
  Case9,
  TrivialL1,
  Towers,
  CoprimeCombiner,
  DirectBaseCase,
  Undetermined1,
  Undetermined2,
  Undetermined3,
};

std::string_view rule_name(RuleTag tag);

struct TraceEntry {
  mpz_class subindex;  // the prime power (or n itself for the combiner row)
  RuleTag rule;
  bool outcome;
};

struct DirectComputation {
  mpz_class subindex;
  mpz_class m;
  mpz_class l_value;
};

struct Classification {
  mpz_class n;
  std::int64_t d{};
  bool verdict{};
  std::vector<TraceEntry> trace;
  std::vector<DirectComputation> direct;
};

// {"n","d","verdict","trace":[{"subindex","rule","outcome"}],
//  "direct":[{"subindex","m","L"}]} with wide integers as decimal strings.
std::string to_json_string(const Classification& c);

// Verdict for a single prime power q^k with d = p prime.  The rule tag names
// the case that decided; base cases the fast rules cannot settle run the
// direct oracle, and every oracle call made is reported (the last one is
// decisive).
struct PrimePowerVerdict {
  bool locally_associated{};
  RuleTag rule{};
  std::vector<MinPowerResult> oracle;
};

PrimePowerVerdict classify_prime_power(std::uint64_t q, unsigned k,
                                       std::int64_t p);
// Convenience form; q_to_k must be a prime power.
PrimePowerVerdict classify_prime_power(const mpz_class& q_to_k,
                                       std::int64_t p);

// Full verdict for R_n in Q[sqrt(p)], p prime: every prime power of n must be
// locally associated and their L values pairwise coprime.
Classification classify(const PrimeFactorization& n_factored, std::int64_t p);
Classification classify(const mpz_class& n, std::int64_t p);

// Same combiner for any squarefree d > 1; composite d resolves every prime
// power through the direct oracle (no prime-only fast rules apply).
Classification classify_general(const PrimeFactorization& n_factored,
                                std::int64_t d);
Classification classify_general(const mpz_class& n, std::int64_t d);

// Fast verdict == direct oracle verdict; false would mean a defect.
bool cross_validate(const mpz_class& n, std::int64_t p);

}  // namespace quadorder
