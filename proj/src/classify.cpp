#include "quadorder/classify.hpp"

#include <numeric>

#include "json.hpp"

#include "quadorder/errors.hpp"

namespace quadorder {

namespace {

MinPowerResult oracle(std::uint64_t q, unsigned k, std::int64_t d) {
  PrimeFactorization nf;
  nf.factors.emplace_back(q, k);
  return minimal_unit_power(nf, d);
}

mpz_class prime_power_value(std::uint64_t q, unsigned k) {
  mpz_class v;
  mpz_class base = static_cast<unsigned long>(q);
  mpz_pow_ui(v.get_mpz_t(), base.get_mpz_t(), k);
  return v;
}

void require_prime_d(std::int64_t p) {
  if (p <= 1 || !is_prime(static_cast<std::uint64_t>(p)))
    throw DomainError("classify: d must be prime here (got " +
                      std::to_string(p) + ")");
}

// Shared combiner: AND of the per-prime-power outcomes, plus pairwise
// coprimality of their L values when n has several prime factors.
Classification combine(const PrimeFactorization& nf, std::int64_t d,
                       const std::vector<PrimePowerVerdict>& verdicts) {
  Classification c;
  c.n = nf.value();
  c.d = d;
  c.verdict = true;
  std::vector<mpz_class> lvals;
  lvals.reserve(nf.factors.size());
  for (std::size_t i = 0; i < nf.factors.size(); ++i) {
    const auto& [q, k] = nf.factors[i];
    const PrimePowerVerdict& v = verdicts[i];
    c.trace.push_back(
        TraceEntry{prime_power_value(q, k), v.rule, v.locally_associated});
    for (const MinPowerResult& r : v.oracle)
      c.direct.push_back(DirectComputation{r.n, r.m, r.l_value});
    PrimeFactorization part;
    part.factors.emplace_back(q, k);
    lvals.push_back(l_function(part, d));
    c.verdict = c.verdict && v.locally_associated;
  }
  if (nf.factors.size() >= 2) {
    bool coprime = true;
    mpz_class g;
    for (std::size_t i = 0; i < lvals.size() && coprime; ++i) {
      for (std::size_t j = i + 1; j < lvals.size() && coprime; ++j) {
        mpz_gcd(g.get_mpz_t(), lvals[i].get_mpz_t(), lvals[j].get_mpz_t());
        if (g != 1) coprime = false;
      }
    }
    c.trace.push_back(TraceEntry{c.n, RuleTag::CoprimeCombiner, coprime});
    c.verdict = c.verdict && coprime;
  }
  return c;
}

}  // namespace

std::string_view rule_name(RuleTag tag) {
  switch (tag) {
    case RuleTag::Case1: return "Case1";
    case RuleTag::Case2: return "Case2";
    case RuleTag::Case3: return "Case3";
    case RuleTag::Case4: return "Case4";
    case RuleTag::Case5: return "Case5";
    case RuleTag::Case6: return "Case6";
    case RuleTag::Case7: return "Case7";
    case RuleTag::Case8: return "Case8";
    case RuleTag::Case9: return "Case9";
    case RuleTag::TrivialL1: return "TrivialL1";
    case RuleTag::Towers: return "Towers";
    case RuleTag::CoprimeCombiner: return "CoprimeCombiner";
    case RuleTag::DirectBaseCase: return "DirectBaseCase";
    case RuleTag::Undetermined1: return "Undetermined1";
    case RuleTag::Undetermined2: return "Undetermined2";
    case RuleTag::Undetermined3: return "Undetermined3";
  }
  return "?";
}

PrimePowerVerdict classify_prime_power(std::uint64_t q, unsigned k,
                                       std::int64_t p) {
  require_prime_d(p);
  if (k == 0 || !is_prime(q))
    throw DomainError("classify_prime_power: q^k must be a prime power");
  const std::uint64_t pu = static_cast<std::uint64_t>(p);

  if (q == pu) {
    // R_{p^k} is locally associated iff R_p is; settle R_p directly.
    MinPowerResult r = oracle(q, 1, p);
    return PrimePowerVerdict{r.locally_associated, RuleTag::Case4, {r}};
  }

  if (q == 2) {  // p odd from here on
    if (k == 1) {
      if (p % 8 == 1) return {true, RuleTag::TrivialL1, {}};  // L(2,p) = 1
      if (p % 4 == 3) return {true, RuleTag::Case1, {}};
      // p = 5 (mod 8): no fast rule for R_2.
      MinPowerResult r = oracle(2, 1, p);
      return {r.locally_associated, RuleTag::Undetermined1, {r}};
    }
    if (k == 2) {
      if (p % 8 == 1) return {true, RuleTag::Case2, {}};
      if (p % 4 == 3) return {false, RuleTag::Case8, {}};
      // p = 5 (mod 8): R_4 follows R_2.
      MinPowerResult r = oracle(2, 1, p);
      return {r.locally_associated, RuleTag::Case5, {r}};
    }
    // R_8 is never locally associated for odd p; deeper powers descend to it.
    return {false, k == 3 ? RuleTag::Case9 : RuleTag::Towers, {}};
  }

  // q odd, q != p.
  if (p % 4 == 3 || q % 4 == 1) return {false, RuleTag::Case7, {}};

  // q = 3 (mod 4) and p != 3 (mod 4).
  if (k == 1) {
    if (q == 3) return {true, RuleTag::Case3, {}};
    MinPowerResult r = oracle(q, 1, p);
    return {r.locally_associated, RuleTag::Undetermined2, {r}};
  }
  PrimePowerVerdict base = classify_prime_power(q, 1, p);
  if (k == 2) {
    if (!base.locally_associated)
      return {false, RuleTag::Towers, base.oracle};
    MinPowerResult r = oracle(q, 2, p);
    std::vector<MinPowerResult> calls = base.oracle;
    calls.push_back(r);
    return {r.locally_associated, RuleTag::Undetermined3, calls};
  }
  // k >= 3: R_{q^k} follows R_{q^2}.
  PrimePowerVerdict sq = classify_prime_power(q, 2, p);
  return {sq.locally_associated, RuleTag::Case6, sq.oracle};
}

PrimePowerVerdict classify_prime_power(const mpz_class& q_to_k,
                                       std::int64_t p) {
  PrimeFactorization nf = factorize(q_to_k);
  if (nf.factors.size() != 1)
    throw DomainError("classify_prime_power: " + q_to_k.get_str() +
                      " is not a prime power");
  return classify_prime_power(nf.factors[0].first, nf.factors[0].second, p);
}

Classification classify(const PrimeFactorization& nf, std::int64_t p) {
  require_prime_d(p);
  std::vector<PrimePowerVerdict> verdicts;
  verdicts.reserve(nf.factors.size());
  for (const auto& [q, k] : nf.factors)
    verdicts.push_back(classify_prime_power(q, k, p));
  return combine(nf, p, verdicts);
}

Classification classify(const mpz_class& n, std::int64_t p) {
  return classify(factorize(n), p);
}

Classification classify_general(const PrimeFactorization& nf,
                                std::int64_t d) {
  const FieldDesc field = make_field(d);  // validates d
  if (is_prime(static_cast<std::uint64_t>(d))) return classify(nf, d);
  (void)field;
  std::vector<PrimePowerVerdict> verdicts;
  verdicts.reserve(nf.factors.size());
  for (const auto& [q, k] : nf.factors) {
    MinPowerResult r = oracle(q, k, d);
    verdicts.push_back(PrimePowerVerdict{r.locally_associated,
                                         RuleTag::DirectBaseCase,
                                         {r}});
  }
  return combine(nf, d, verdicts);
}

Classification classify_general(const mpz_class& n, std::int64_t d) {
  return classify_general(factorize(n), d);
}

bool cross_validate(const mpz_class& n, std::int64_t p) {
  return classify(n, p).verdict == is_locally_associated_direct(n, p);
}

std::string to_json_string(const Classification& c) {
  nlohmann::ordered_json j;
  j["n"] = c.n.get_str();
  j["d"] = c.d;
  j["verdict"] = c.verdict;
  j["trace"] = nlohmann::ordered_json::array();
  for (const TraceEntry& t : c.trace) {
    j["trace"].push_back({{"subindex", t.subindex.get_str()},
                          {"rule", std::string(rule_name(t.rule))},
                          {"outcome", t.outcome}});
  }
  j["direct"] = nlohmann::ordered_json::array();
  for (const DirectComputation& dcomp : c.direct) {
    j["direct"].push_back({{"subindex", dcomp.subindex.get_str()},
                           {"m", dcomp.m.get_str()},
                           {"L", dcomp.l_value.get_str()}});
  }
  return j.dump();
}

}  // namespace quadorder
