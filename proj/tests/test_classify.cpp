#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>

#include "quadorder/classify.hpp"
#include "quadorder/errors.hpp"
#include "quadorder/laorder.hpp"
#include "testutil.hpp"

using namespace quadorder;

TEST_CASE("prime-power rules on pinned values") {
  SUBCASE("q = 2, exponent ladder") {
    // p = 1 (mod 8): L(2,p) = 1 so R_2 is trivially associated.
    auto v = classify_prime_power(2, 1, 17);
    CHECK(v.locally_associated);
    CHECK(v.rule == RuleTag::TrivialL1);
    CHECK(v.oracle.empty());

    // p = 3 (mod 4).
    v = classify_prime_power(2, 1, 7);
    CHECK(v.locally_associated);
    CHECK(v.rule == RuleTag::Case1);
    CHECK(v.oracle.empty());

    // p = 5 (mod 8): only the oracle can settle R_2.
    v = classify_prime_power(2, 1, 5);
    CHECK(v.locally_associated);
    CHECK(v.rule == RuleTag::Undetermined1);
    REQUIRE(v.oracle.size() == 1);
    CHECK(v.oracle[0].n == 2);
    CHECK(v.oracle[0].m == 3);

    // R_4: split by the same congruence classes.
    v = classify_prime_power(2, 2, 17);
    CHECK(v.locally_associated);
    CHECK(v.rule == RuleTag::Case2);
    v = classify_prime_power(2, 2, 7);
    CHECK_FALSE(v.locally_associated);
    CHECK(v.rule == RuleTag::Case8);
    v = classify_prime_power(2, 2, 5);
    CHECK(v.locally_associated);  // follows R_2
    CHECK(v.rule == RuleTag::Case5);
    REQUIRE(v.oracle.size() == 1);
    CHECK(v.oracle[0].n == 2);

    // R_8 never is, for odd p; higher powers descend to it.
    v = classify_prime_power(2, 3, 13);
    CHECK_FALSE(v.locally_associated);
    CHECK(v.rule == RuleTag::Case9);
    v = classify_prime_power(2, 4, 13);
    CHECK_FALSE(v.locally_associated);
    CHECK(v.rule == RuleTag::Towers);
    v = classify_prime_power(2, 7, 17);
    CHECK_FALSE(v.locally_associated);
    CHECK(v.rule == RuleTag::Towers);
  }

  SUBCASE("q equals p: everything reduces to R_p") {
    auto v = classify_prime_power(3, 8, 3);
    CHECK(v.locally_associated);
    CHECK(v.rule == RuleTag::Case4);
    REQUIRE(v.oracle.size() == 1);
    CHECK(v.oracle[0].n == 3);
    CHECK(v.oracle[0].m == 3);

    v = classify_prime_power(2, 2, 2);
    CHECK(v.locally_associated);
    CHECK(v.rule == RuleTag::Case4);
    REQUIRE(v.oracle.size() == 1);
    CHECK(v.oracle[0].n == 2);

    v = classify_prime_power(73, 3, 73);
    CHECK(v.locally_associated);
    CHECK(v.rule == RuleTag::Case4);
  }

  SUBCASE("odd q != p killed by congruence conditions") {
    // q = 1 (mod 4) never works.
    auto v = classify_prime_power(5, 1, 13);
    CHECK_FALSE(v.locally_associated);
    CHECK(v.rule == RuleTag::Case7);
    CHECK(v.oracle.empty());
    // p = 3 (mod 4) never works either (q odd, q != p).
    v = classify_prime_power(7, 1, 3);
    CHECK_FALSE(v.locally_associated);
    CHECK(v.rule == RuleTag::Case7);
    v = classify_prime_power(53, 3, 13);
    CHECK_FALSE(v.locally_associated);
    CHECK(v.rule == RuleTag::Case7);
  }

  SUBCASE("q = 3 (mod 4) against p != 3 (mod 4)") {
    // q = 3 is always associated.
    auto v = classify_prime_power(3, 1, 5);
    CHECK(v.locally_associated);
    CHECK(v.rule == RuleTag::Case3);
    CHECK(v.oracle.empty());
    v = classify_prime_power(3, 1, 2);
    CHECK(v.locally_associated);
    CHECK(v.rule == RuleTag::Case3);

    // q > 3 at the first power: oracle only.
    v = classify_prime_power(7, 1, 5);
    CHECK(v.locally_associated);
    CHECK(v.rule == RuleTag::Undetermined2);
    REQUIRE(v.oracle.size() == 1);
    CHECK(v.oracle[0].n == 7);
    CHECK(v.oracle[0].m == 8);
    CHECK(v.oracle[0].l_value == 8);

    // q^2 after an associated base: second oracle call on R_{q^2}.
    v = classify_prime_power(7, 2, 5);
    CHECK(v.locally_associated);
    CHECK(v.rule == RuleTag::Undetermined3);
    REQUIRE(v.oracle.size() == 2);
    CHECK(v.oracle[0].n == 7);
    CHECK(v.oracle[1].n == 49);
    CHECK(v.oracle[1].m == 56);

    // q = 3 base is rule-settled, so only R_9 reaches the oracle.
    v = classify_prime_power(3, 2, 73);
    CHECK(v.locally_associated);
    CHECK(v.rule == RuleTag::Undetermined3);
    REQUIRE(v.oracle.size() == 1);
    CHECK(v.oracle[0].n == 9);
    CHECK(v.oracle[0].m == 6);

    // q^k for k >= 3 follows R_{q^2}.
    v = classify_prime_power(7, 4, 73);
    CHECK_FALSE(v.locally_associated);  // R_49 fails in Q[sqrt 73]
    CHECK(v.rule == RuleTag::Case6);
    REQUIRE(v.oracle.size() == 2);
    CHECK(v.oracle[1].n == 49);
    CHECK(v.oracle[1].m == 8);
    CHECK(v.oracle[1].l_value == 56);

    v = classify_prime_power(7, 3, 5);
    CHECK(v.locally_associated);  // R_49 holds in Q[sqrt 5]
    CHECK(v.rule == RuleTag::Case6);
  }
}

TEST_CASE("prime-power rules reject bad inputs") {
  CHECK_THROWS_AS(classify_prime_power(4, 1, 5), DomainError);   // q not prime
  CHECK_THROWS_AS(classify_prime_power(2, 0, 5), DomainError);   // k = 0
  CHECK_THROWS_AS(classify_prime_power(2, 1, 6), DomainError);   // d not prime
  CHECK_THROWS_AS(classify_prime_power(mpz_class{12}, 5),
                  DomainError);  // 12 is not a prime power
  CHECK(classify_prime_power(mpz_class{8}, 13).rule == RuleTag::Case9);
}

TEST_CASE("classify on pinned composite indices") {
  SUBCASE("13122 in Q[sqrt 3] is locally associated") {
    const Classification c = classify(mpz_class{13122}, 3);
    CHECK(c.verdict);
    REQUIRE(c.trace.size() == 3);
    CHECK(c.trace[0].subindex == 2);
    CHECK(c.trace[0].rule == RuleTag::Case1);
    CHECK(c.trace[0].outcome);
    CHECK(c.trace[1].subindex == 6561);
    CHECK(c.trace[1].rule == RuleTag::Case4);
    CHECK(c.trace[1].outcome);
    CHECK(c.trace[2].subindex == 13122);
    CHECK(c.trace[2].rule == RuleTag::CoprimeCombiner);
    CHECK(c.trace[2].outcome);
    REQUIRE(c.direct.size() == 1);
    CHECK(c.direct[0].subindex == 3);
    CHECK(c.direct[0].m == 3);
    CHECK(c.direct[0].l_value == 3);
  }

  SUBCASE("2 * 7^4 * 73^3 in Q[sqrt 73] fails through the 7^4 tower") {
    const Classification c = classify(mpz_class{"1868059634"}, 73);
    CHECK_FALSE(c.verdict);
    REQUIRE(c.trace.size() == 4);
    CHECK(c.trace[0].subindex == 2);
    CHECK(c.trace[0].rule == RuleTag::TrivialL1);
    CHECK(c.trace[0].outcome);
    CHECK(c.trace[1].subindex == 2401);
    CHECK(c.trace[1].rule == RuleTag::Case6);
    CHECK_FALSE(c.trace[1].outcome);
    CHECK(c.trace[2].subindex == 389017);
    CHECK(c.trace[2].rule == RuleTag::Case4);
    CHECK(c.trace[2].outcome);
    // The L values stay coprime; the verdict fails on the 7^4 entry alone.
    CHECK(c.trace[3].rule == RuleTag::CoprimeCombiner);
    CHECK(c.trace[3].outcome);
    REQUIRE(c.direct.size() == 3);
    CHECK(c.direct[0].subindex == 7);
    CHECK(c.direct[0].m == 8);
    CHECK(c.direct[0].l_value == 8);
    CHECK(c.direct[1].subindex == 49);
    CHECK(c.direct[1].m == 8);
    CHECK(c.direct[1].l_value == 56);
    CHECK(c.direct[2].subindex == 73);
    CHECK(c.direct[2].m == 73);
  }

  SUBCASE("5^7 * 13^2 * 53^3 in Q[sqrt 13] fails the coprimality gate too") {
    const Classification c = classify(mpz_class{"1965641640625"}, 13);
    CHECK_FALSE(c.verdict);
    REQUIRE(c.trace.size() == 4);
    CHECK(c.trace[0].subindex == 78125);
    CHECK(c.trace[0].rule == RuleTag::Case7);
    CHECK_FALSE(c.trace[0].outcome);
    CHECK(c.trace[1].subindex == 169);
    CHECK(c.trace[1].rule == RuleTag::Case4);
    CHECK(c.trace[1].outcome);
    CHECK(c.trace[2].subindex == 148877);
    CHECK(c.trace[2].rule == RuleTag::Case7);
    CHECK_FALSE(c.trace[2].outcome);
    CHECK(c.trace[3].subindex == mpz_class{"1965641640625"});
    CHECK(c.trace[3].rule == RuleTag::CoprimeCombiner);
    CHECK_FALSE(c.trace[3].outcome);  // gcd(L(5^7), L(53^3)) is even
  }

  SUBCASE("n = 1: empty trace, associated") {
    const Classification c = classify(mpz_class{1}, 7);
    CHECK(c.verdict);
    CHECK(c.trace.empty());
    CHECK(c.direct.empty());
  }

  SUBCASE("single prime power gets no combiner row") {
    const Classification c = classify(mpz_class{49}, 73);
    CHECK_FALSE(c.verdict);
    REQUIRE(c.trace.size() == 1);
    CHECK(c.trace[0].rule == RuleTag::Undetermined3);  // second oracle call
  }
}

TEST_CASE("classify rejects non-prime d and n = 0") {
  CHECK_THROWS_AS(classify(mpz_class{6}, 4), DomainError);
  CHECK_THROWS_AS(classify(mpz_class{6}, 1), DomainError);
  CHECK_THROWS_AS(classify(mpz_class{0}, 5), DomainError);
}

TEST_CASE("classify_general covers composite squarefree d") {
  const Classification c = classify_general(mpz_class{2}, 10);
  CHECK(c.verdict);
  REQUIRE(c.trace.size() == 1);
  CHECK(c.trace[0].rule == RuleTag::DirectBaseCase);
  REQUIRE(c.direct.size() == 1);
  CHECK(c.direct[0].subindex == 2);
  CHECK(c.direct[0].m == 2);

  const Classification c6 = classify_general(mpz_class{12}, 6);
  REQUIRE(c6.trace.size() == 3);
  CHECK(c6.trace[0].rule == RuleTag::DirectBaseCase);
  CHECK(c6.trace[1].rule == RuleTag::DirectBaseCase);
  CHECK(c6.trace[2].rule == RuleTag::CoprimeCombiner);

  CHECK_THROWS_AS(classify_general(mpz_class{2}, 12), DomainError);
  CHECK_THROWS_AS(classify_general(mpz_class{2}, -3), DomainError);
}

TEST_CASE("classify_general matches classify on prime d") {
  auto rng = testutil::make_rng(0x5eed3001);
  const std::int64_t ps[] = {2, 3, 5, 13, 73};
  for (int trial = 0; trial < 200; ++trial) {
    const std::int64_t p = ps[testutil::rand_in(rng, 0, std::size(ps) - 1)];
    const mpz_class n{static_cast<unsigned long>(
        testutil::rand_in(rng, 1, 500))};
    const Classification a = classify(n, p);
    const Classification b = classify_general(n, p);
    CHECK(a.verdict == b.verdict);
    CHECK(a.trace.size() == b.trace.size());
  }
}

TEST_CASE("trace covers each prime power exactly once") {
  auto rng = testutil::make_rng(0x5eed3002);
  const std::int64_t ps[] = {3, 5, 13};
  for (int trial = 0; trial < 150; ++trial) {
    const std::int64_t p = ps[testutil::rand_in(rng, 0, std::size(ps) - 1)];
    const unsigned long n = testutil::rand_in(rng, 2, 4000);
    const PrimeFactorization nf = factorize(n);
    const Classification c = classify(nf, p);
    const std::size_t parts = nf.factors.size();
    REQUIRE(c.trace.size() == (parts >= 2 ? parts + 1 : parts));
    for (std::size_t i = 0; i < parts; ++i) {
      mpz_class qk;
      mpz_class base{static_cast<unsigned long>(nf.factors[i].first)};
      mpz_pow_ui(qk.get_mpz_t(), base.get_mpz_t(), nf.factors[i].second);
      CHECK(c.trace[i].subindex == qk);
    }
    if (parts >= 2) CHECK(c.trace.back().subindex == n);
  }
}

TEST_CASE("fast rules agree with the direct oracle") {
  for (std::int64_t p : {2, 3, 5, 7, 13, 17, 29, 73})
    for (unsigned long n = 1; n <= 120; ++n)
      CHECK(cross_validate(mpz_class{n}, p));
}

TEST_CASE("json rendering") {
  const std::string j = to_json_string(classify(mpz_class{13122}, 3));
  CHECK(j ==
        R"({"n":"13122","d":3,"verdict":true,)"
        R"("trace":[{"subindex":"2","rule":"Case1","outcome":true},)"
        R"({"subindex":"6561","rule":"Case4","outcome":true},)"
        R"({"subindex":"13122","rule":"CoprimeCombiner","outcome":true}],)"
        R"("direct":[{"subindex":"3","m":"3","L":"3"}]})");

  // Wide n stays exact as a decimal string.
  PrimeFactorization nf;
  nf.factors = {{2, 70}};
  const std::string jw = to_json_string(classify(nf, 17));
  CHECK(jw.find("\"n\":\"1180591620717411303424\"") != std::string::npos);
  CHECK(jw.find("\"rule\":\"Towers\"") != std::string::npos);
}

TEST_CASE("rule names are stable") {
  CHECK(rule_name(RuleTag::Case1) == "Case1");
  CHECK(rule_name(RuleTag::Case9) == "Case9");
  CHECK(rule_name(RuleTag::TrivialL1) == "TrivialL1");
  CHECK(rule_name(RuleTag::Towers) == "Towers");
  CHECK(rule_name(RuleTag::CoprimeCombiner) == "CoprimeCombiner");
  CHECK(rule_name(RuleTag::DirectBaseCase) == "DirectBaseCase");
  CHECK(rule_name(RuleTag::Undetermined1) == "Undetermined1");
  CHECK(rule_name(RuleTag::Undetermined3) == "Undetermined3");
}
