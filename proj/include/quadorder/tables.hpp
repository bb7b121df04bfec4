#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace quadorder {

// One table row; `rules` is the ';'-joined rule trace of the classifier.
struct TableRow {
  std::int64_t d{};
  mpz_class n;
  bool locally_associated{};
  mpz_class m;
  mpz_class l_value;
  std::string rules;
};

inline constexpr std::string_view kTableCsvHeader =
    "d,n,locally_associated,m,L,rules";

std::string to_csv(const TableRow& row);        // locally_associated as 0/1
std::string to_json_line(const TableRow& row);  // mirrors the field names

// Emits rows for every d in d_values and 1 <= n <= n_max, ordered by d then n,
// deterministically.  Each row runs both the classifier (for the rule trace)
// and the direct oracle (for m); a verdict mismatch between them aborts, so
// every emitted table is cross-validated.  Every d is validated up front; a
// bad one aborts before the first row.  Row computation is parallel over d.
void generate_table(const std::vector<std::int64_t>& d_values,
                    std::uint64_t n_max,
                    const std::function<void(const TableRow&)>& sink,
                    unsigned threads = 0);

// Occurrence counts for the three families the fast rules leave open:
//   case 1: n = 2,   p = 5 (mod 8)
//   case 2: n = q,   q prime = 3 (mod 4), p != 3 (mod 4)
//   case 3: n = q^2, same congruences, counted where R_q is locally associated
// p runs over primes <= p_max; q over primes <= n_max (q^2 <= n_max for
// case 3).  n_max is required for cases 2 and 3 — the ranges define the
// statistic, so there are no defaults.
struct UndeterminedStats {
  int case_id{};
  std::uint64_t occurrences{};
  std::uint64_t locally_associated{};
  std::string parameters;  // human-readable description of the filter
};

UndeterminedStats undetermined_stats(int case_id, std::uint64_t p_max,
                                     std::uint64_t n_max = 0);

// Fundamental-unit cache persistence: JSON lines {"d","x","y","norm"} with the
// coordinates as decimal strings.  Loading revalidates |norm| = 1 for every
// entry and rejects the whole file (naming the offending d) on any failure;
// an empty file is an empty cache.
void save_unit_cache(const std::string& path);
void load_unit_cache(const std::string& path);

}  // namespace quadorder
