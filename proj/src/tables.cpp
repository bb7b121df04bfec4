#include "quadorder/tables.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "quadorder/classify.hpp"
#include "quadorder/errors.hpp"

namespace quadorder {

namespace {

unsigned effective_threads(unsigned requested) {
  if (requested != 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  return hw > 8 ? 8 : hw;
}

std::string rules_string(const Classification& c) {
  std::string out;
  for (const TraceEntry& t : c.trace) {
    if (!out.empty()) out += ';';
    out += rule_name(t.rule);
  }
  return out;
}

std::vector<TableRow> rows_for_d(std::int64_t d, std::uint64_t n_max) {
  std::vector<TableRow> rows;
  rows.reserve(n_max);
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    const PrimeFactorization nf = factorize(n);
    const MinPowerResult mp = minimal_unit_power(nf, d);
    const Classification cls = classify_general(nf, d);
    if (cls.verdict != mp.locally_associated)
      throw std::logic_error("generate_table: classifier and oracle disagree "
                             "at d=" + std::to_string(d) +
                             ", n=" + std::to_string(n));
    rows.push_back(TableRow{d, mp.n, mp.locally_associated, mp.m, mp.l_value,
                            rules_string(cls)});
  }
  return rows;
}

bool direct_la(std::uint64_t n, std::uint64_t d) {
  return is_locally_associated_direct(mpz_class{static_cast<unsigned long>(n)},
                                      static_cast<std::int64_t>(d));
}

}  // namespace

std::string to_csv(const TableRow& row) {
  std::ostringstream out;
  out << row.d << ',' << row.n << ',' << (row.locally_associated ? 1 : 0)
      << ',' << row.m << ',' << row.l_value << ',' << row.rules;
  return out.str();
}

std::string to_json_line(const TableRow& row) {
  nlohmann::ordered_json j;
  j["d"] = row.d;
  j["n"] = row.n.get_str();
  j["locally_associated"] = row.locally_associated;
  j["m"] = row.m.get_str();
  j["l_value"] = row.l_value.get_str();
  j["rules"] = row.rules;
  return j.dump();
}

void generate_table(const std::vector<std::int64_t>& d_values,
                    std::uint64_t n_max,
                    const std::function<void(const TableRow&)>& sink,
                    unsigned threads) {
  if (n_max < 1) throw DomainError("generate_table: n_max must be >= 1");
  std::vector<std::int64_t> ds = d_values;
  std::sort(ds.begin(), ds.end());
  ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
  for (std::int64_t d : ds) make_field(d);  // abort before any row

  const unsigned T = effective_threads(threads);
  std::size_t i = 0;
  while (i < ds.size()) {
    const std::size_t batch = std::min<std::size_t>(T, ds.size() - i);
    std::vector<std::future<std::vector<TableRow>>> futures;
    futures.reserve(batch);
    for (std::size_t b = 0; b < batch; ++b) {
      std::int64_t d = ds[i + b];
      futures.push_back(batch > 1
                            ? std::async(std::launch::async, rows_for_d, d,
                                         n_max)
                            : std::async(std::launch::deferred, rows_for_d, d,
                                         n_max));
    }
    for (auto& fut : futures) {
      for (const TableRow& row : fut.get()) sink(row);
    }
    i += batch;
  }
}

UndeterminedStats undetermined_stats(int case_id, std::uint64_t p_max,
                                     std::uint64_t n_max) {
  if (case_id < 1 || case_id > 3)
    throw DomainError("undetermined_stats: case must be 1, 2 or 3");
  if (p_max < 2) throw DomainError("undetermined_stats: p_max must be >= 2");
  if (case_id != 1 && n_max == 0)
    throw DomainError("undetermined_stats: cases 2 and 3 need an explicit "
                      "n_max; the ranges define the statistic");

  UndeterminedStats out;
  out.case_id = case_id;
  const std::vector<std::uint64_t> ps = primes_up_to(p_max);

  if (case_id == 1) {
    out.parameters =
        "p prime <= " + std::to_string(p_max) + ", p = 5 (mod 8), n = 2";
    for (std::uint64_t p : ps) {
      if (p % 8 != 5) continue;
      ++out.occurrences;
      if (direct_la(2, p)) ++out.locally_associated;
    }
    return out;
  }

  const std::vector<std::uint64_t> qs = primes_up_to(n_max);
  if (case_id == 2) {
    out.parameters = "p prime <= " + std::to_string(p_max) +
                     ", p != 3 (mod 4); n = q for q prime <= " +
                     std::to_string(n_max) + ", q = 3 (mod 4)";
    for (std::uint64_t p : ps) {
      if (p % 4 == 3) continue;
      for (std::uint64_t q : qs) {
        if (q % 4 != 3) continue;
        ++out.occurrences;
        if (direct_la(q, p)) ++out.locally_associated;
      }
    }
    return out;
  }

  out.parameters = "p prime <= " + std::to_string(p_max) +
                   ", p != 3 (mod 4); n = q^2 <= " + std::to_string(n_max) +
                   " for q prime, q = 3 (mod 4), R_q locally associated";
  for (std::uint64_t p : ps) {
    if (p % 4 == 3) continue;
    for (std::uint64_t q : qs) {
      if (q % 4 != 3 || q * q > n_max) continue;
      if (!direct_la(q, p)) continue;  // family is defined over LA bases
      ++out.occurrences;
      if (direct_la(q * q, p)) ++out.locally_associated;
    }
  }
  return out;
}

void save_unit_cache(const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out.good())
    throw ParseError("unit cache '" + path + "': not writable");
  for (const QuadInt& u : unit_cache_entries()) {
    nlohmann::ordered_json j;
    j["d"] = u.field.d;
    j["x"] = u.x.get_str();
    j["y"] = u.y.get_str();
    mpz_class nrm = norm(u);
    j["norm"] = static_cast<long>(nrm.get_si());
    out << j.dump() << "\n";
  }
}

void load_unit_cache(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw ParseError("unit cache '" + path + "': cannot open");
  std::vector<QuadInt> loaded;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("unit cache '" + path + "' line " +
                       std::to_string(line_no) + ": " + e.what());
    }
    std::int64_t d;
    mpz_class x, y;
    long stored_norm;
    try {
      d = j.at("d").get<std::int64_t>();
      x = mpz_class{j.at("x").get<std::string>()};
      y = mpz_class{j.at("y").get<std::string>()};
      stored_norm = j.at("norm").get<long>();
    } catch (const std::exception& e) {
      throw ParseError("unit cache '" + path + "' line " +
                       std::to_string(line_no) + ": " + e.what());
    }
    QuadInt u{make_field(d), std::move(x), std::move(y)};
    mpz_class nrm = norm(u);
    if ((nrm != 1 && nrm != -1) || nrm != stored_norm)
      throw ParseError("unit cache '" + path + "': entry for d=" +
                       std::to_string(d) + " fails the norm check");
    loaded.push_back(std::move(u));
  }
  // Only a fully valid file reaches the in-memory cache.
  for (const QuadInt& u : loaded) unit_cache_store(u);
}

}  // namespace quadorder
