#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace quadorder {

// Minimal positive solution of x^2 - p*y^2 = 1.
struct PellSolution {
  std::uint64_t p{};
  mpz_class x;
  mpz_class y;
};

// From the continued fraction of sqrt(p); the first convergent with residual
// exactly +1 is the minimal solution.  p must be an odd prime.
PellSolution pell_min_solution(std::uint64_t p);

// The conjecture under scan: R_p is locally associated in Q[sqrt(p)] for every
// prime p.  For p = 2 that is checked directly; for odd p it is equivalent to
// p not dividing y in the minimal Pell solution (and the minimal solution
// settles it: p | y_1 forces p | y_k for every k).
bool conjecture_check(std::uint64_t p);

// For odd p the direct order-membership verdict must agree with the Pell
// criterion; false would be a counterexample to a proven equivalence.
bool theorem41_check(std::uint64_t p);

struct ConjectureEntry {
  std::uint64_t p{};
  bool holds{};
  std::optional<PellSolution> solution;  // empty for p = 2
};

struct ScanOptions {
  std::uint64_t p_max{};
  unsigned threads{0};           // 0 = pick from hardware, capped at 8
  std::string checkpoint_path;   // optional plain-text resume state
};

// Streams one entry per prime <= p_max in ascending order.  Per-prime work is
// independent and farmed out in chunks; emission stays ordered.  When a
// checkpoint path is set, the last completed prime is recorded there after
// each chunk and the scan resumes past it on the next run.
void conjecture_scan(const ScanOptions& options,
                     const std::function<void(const ConjectureEntry&)>& sink);

// Convenience form collecting the whole scan.
std::vector<ConjectureEntry> conjecture_scan(std::uint64_t p_max);

}  // namespace quadorder
