#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "quadorder/arith.hpp"
#include "quadorder/classify.hpp"
#include "quadorder/errors.hpp"
#include "quadorder/laorder.hpp"
#include "quadorder/pell.hpp"
#include "quadorder/quadfield.hpp"
#include "quadorder/tables.hpp"

namespace {

using namespace quadorder;

mpz_class parse_mpz(const std::string& text, const char* what) {
  try {
    return mpz_class{text};
  } catch (const std::invalid_argument&) {
    throw DomainError(std::string(what) + ": '" + text +
                      "' is not an integer");
  }
}

std::int64_t parse_d(const std::string& text) {
  mpz_class v = parse_mpz(text, "d");
  if (!v.fits_slong_p())
    throw CapacityError("d = " + text + " exceeds the supported range");
  return static_cast<std::int64_t>(v.get_si());
}

struct ParsedIndex {
  PrimeFactorization nf;
  mpz_class value;
};

// Accepts a plain integer or the pre-factored form q1^k1*q2^k2*...; the
// claimed factorization is verified (prime bases, and the product is
// re-factored whenever it fits the 64-bit bound).
ParsedIndex parse_index(const std::string& text) {
  if (text.find('*') == std::string::npos &&
      text.find('^') == std::string::npos) {
    mpz_class n = parse_mpz(text, "n");
    if (n < 1) throw DomainError("n must be >= 1");
    return ParsedIndex{factorize(n), n};
  }
  std::map<std::uint64_t, unsigned> acc;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t star = text.find('*', pos);
    std::string term = text.substr(
        pos, star == std::string::npos ? std::string::npos : star - pos);
    pos = star == std::string::npos ? text.size() + 1 : star + 1;
    std::size_t caret = term.find('^');
    std::string base_text = term.substr(0, caret);
    mpz_class base = parse_mpz(base_text, "factored index base");
    if (base < 2)
      throw DomainError("factored index base " + base_text +
                        " is not prime");
    if (mpz_sizeinbase(base.get_mpz_t(), 2) > 64)
      throw CapacityError("factored index base '" + base_text +
                          "' is outside the 64-bit prime range");
    std::uint64_t q = mpz_get_ui(base.get_mpz_t());
    if (!is_prime(q))
      throw DomainError("factored index base " + base_text +
                        " is not prime");
    unsigned long k = 1;
    if (caret != std::string::npos) {
      mpz_class exp = parse_mpz(term.substr(caret + 1), "factored exponent");
      if (exp < 1 || !exp.fits_ulong_p() || exp > 0xFFFFFFFFul)
        throw DomainError("factored exponent '" + term.substr(caret + 1) +
                          "' must be a positive integer");
      k = exp.get_ui();
    }
    acc[q] += static_cast<unsigned>(k);
  }
  ParsedIndex out;
  out.nf.factors.assign(acc.begin(), acc.end());
  out.value = out.nf.value();
  if (mpz_sizeinbase(out.value.get_mpz_t(), 2) <= 64 &&
      !(factorize(out.value) == out.nf))
    throw DomainError("factored index does not match its own product");
  return out;
}

const char* verdict_line(bool locally_associated) {
  return locally_associated ? "locally associated" : "not locally associated";
}

bool is_squarefree(std::int64_t d) {
  if (d < 2) return false;
  for (const auto& [p, e] : factorize(static_cast<std::uint64_t>(d)).factors)
    if (e > 1) return false;
  return true;
}

void print_unit(std::int64_t d) {
  FieldDesc f = make_field(d);
  const QuadInt& u = fundamental_unit(f);
  mpz_class nrm = norm(u);
  if (auto ab = integral_sqrt_coords(u)) {
    std::cout << ab->first << " + " << ab->second << "·√" << f.d
              << ", norm " << nrm << "\n";
  } else {
    auto [c, e] = half_sqrt_coords(u);
    std::cout << "(" << c << " + " << e << "·√" << f.d
              << ")/2, norm " << nrm << "\n";
  }
  std::cout << "alpha basis: " << u.x << " + " << u.y << "·α, "
            << "α = " << (f.half_basis ? "(1 + √" : "√")
            << f.d << (f.half_basis ? ")/2" : "") << "\n";
}

void print_trace(const Classification& c) {
  std::cout << "trace:\n";
  for (const TraceEntry& t : c.trace) {
    std::cout << "  " << t.subindex << " " << rule_name(t.rule) << " -> ";
    if (t.rule == RuleTag::CoprimeCombiner)
      std::cout << (t.outcome ? "coprime" : "not coprime");
    else
      std::cout << verdict_line(t.outcome);
    std::cout << "\n";
  }
  if (!c.direct.empty()) {
    std::cout << "direct:\n";
    for (const DirectComputation& dc : c.direct)
      std::cout << "  " << dc.subindex << ": m = " << dc.m
                << ", L = " << dc.l_value << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"locally associated orders in real quadratic fields"};
  app.require_subcommand(1);

  std::string arg_n, arg_d;
  bool flag_trace = false, flag_direct = false, flag_json = false;

  CLI::App* cmd_unit = app.add_subcommand(
      "unit", "fundamental unit of the ring of integers of Q[sqrt(d)]");
  cmd_unit->add_option("d", arg_d, "squarefree integer > 1")->required();

  CLI::App* cmd_lfunc =
      app.add_subcommand("lfunc", "value of the index function L(n,d)");
  cmd_lfunc->add_option("n", arg_n, "index (plain or q1^k1*q2^k2)")
      ->required();
  cmd_lfunc->add_option("d", arg_d, "integer")->required();

  CLI::App* cmd_minpow = app.add_subcommand(
      "minpow", "least power of the fundamental unit inside R_n");
  cmd_minpow->add_option("n", arg_n, "index (plain or q1^k1*q2^k2)")
      ->required();
  cmd_minpow->add_option("d", arg_d, "squarefree integer > 1")->required();

  CLI::App* cmd_classify = app.add_subcommand(
      "classify", "is R_n locally associated in Q[sqrt(d)]?");
  cmd_classify->add_option("n", arg_n, "index (plain or q1^k1*q2^k2)")
      ->required();
  cmd_classify->add_option("d", arg_d, "squarefree integer > 1")->required();
  cmd_classify->add_flag("--trace", flag_trace,
                         "print the per-prime-power rule trace");
  auto* opt_direct = cmd_classify->add_flag(
      "--direct", flag_direct, "bypass the fast rules; use the oracle only");
  cmd_classify->add_flag("--json", flag_json, "print the classification JSON")
      ->excludes(opt_direct);

  std::int64_t arg_d_min = 0, arg_d_max = 0;
  std::uint64_t arg_n_max = 0;
  bool flag_primes_only = false;
  std::string arg_format, arg_out;
  unsigned arg_threads = 0;

  CLI::App* cmd_table =
      app.add_subcommand("table", "verdict table over ranges of d and n");
  cmd_table->add_option("--d-min", arg_d_min)->required();
  cmd_table->add_option("--d-max", arg_d_max)->required();
  cmd_table->add_option("--n-max", arg_n_max)->required();
  cmd_table->add_flag("--primes-only", flag_primes_only,
                      "restrict d to primes");
  cmd_table->add_option("--format", arg_format, "csv or json")
      ->required()
      ->check(CLI::IsMember({"csv", "json"}));
  cmd_table->add_option("--out", arg_out, "output path")->required();
  cmd_table->add_option("--threads", arg_threads);

  std::uint64_t arg_p_max = 0;
  std::string arg_resume;
  bool flag_verbose = false;

  CLI::App* cmd_conjecture = app.add_subcommand(
      "conjecture", "scan: R_p locally associated for every prime p");
  cmd_conjecture->add_option("--p-max", arg_p_max)->required();
  cmd_conjecture->add_option("--resume", arg_resume,
                             "checkpoint file (created if missing)");
  cmd_conjecture->add_option("--threads", arg_threads);
  cmd_conjecture->add_flag("--verbose", flag_verbose,
                           "include full solution values");

  int arg_case = 0;
  CLI::App* cmd_stats = app.add_subcommand(
      "stats", "occurrence counts for the rule-free families");
  cmd_stats->add_option("--p-max", arg_p_max)->required();
  cmd_stats->add_option("--case", arg_case, "1, 2 or 3")
      ->required()
      ->check(CLI::Range(1, 3));
  cmd_stats->add_option("--n-max", arg_n_max,
                        "index range (required for cases 2 and 3)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const char* cache_env = std::getenv("QUADORDER_UNIT_CACHE");
  bool counterexample = false;

  try {
    if (cache_env && *cache_env && std::filesystem::exists(cache_env))
      load_unit_cache(cache_env);

    if (cmd_unit->parsed()) {
      print_unit(parse_d(arg_d));
    } else if (cmd_lfunc->parsed()) {
      ParsedIndex idx = parse_index(arg_n);
      std::cout << l_function(idx.nf, parse_d(arg_d)) << "\n";
    } else if (cmd_minpow->parsed()) {
      ParsedIndex idx = parse_index(arg_n);
      MinPowerResult r = minimal_unit_power(idx.nf, parse_d(arg_d));
      std::cout << "m = " << r.m << "\n"
                << "L = " << r.l_value << "\n"
                << verdict_line(r.locally_associated) << "\n";
    } else if (cmd_classify->parsed()) {
      ParsedIndex idx = parse_index(arg_n);
      std::int64_t d = parse_d(arg_d);
      if (flag_direct) {
        MinPowerResult r = minimal_unit_power(idx.nf, d);
        std::cout << verdict_line(r.locally_associated) << "\n";
      } else {
        Classification c = classify_general(idx.nf, d);
        if (flag_json) {
          std::cout << to_json_string(c) << "\n";
        } else {
          std::cout << verdict_line(c.verdict) << "\n";
          if (flag_trace) print_trace(c);
        }
      }
    } else if (cmd_table->parsed()) {
      if (arg_d_min < 2) throw DomainError("--d-min must be >= 2");
      if (arg_d_max < arg_d_min)
        throw DomainError("--d-max must be >= --d-min");
      std::vector<std::int64_t> ds;
      for (std::int64_t d = arg_d_min; d <= arg_d_max; ++d) {
        if (flag_primes_only && !is_prime(static_cast<std::uint64_t>(d)))
          continue;
        if (!is_squarefree(d)) continue;
        ds.push_back(d);
      }
      std::ofstream out(arg_out, std::ios::trunc);
      if (!out.good())
        throw DomainError("cannot open --out path '" + arg_out + "'");
      const bool csv = (arg_format == "csv");
      if (csv) out << kTableCsvHeader << "\n";
      std::size_t rows = 0;
      generate_table(
          ds, arg_n_max,
          [&](const TableRow& row) {
            out << (csv ? to_csv(row) : to_json_line(row)) << "\n";
            ++rows;
          },
          arg_threads);
      std::cerr << "wrote " << rows << " rows for " << ds.size()
                << " fields to " << arg_out << "\n";
    } else if (cmd_conjecture->parsed()) {
      ScanOptions options;
      options.p_max = arg_p_max;
      options.threads = arg_threads;
      options.checkpoint_path = arg_resume;
      const bool fresh =
          arg_resume.empty() || !std::filesystem::exists(arg_resume);
      if (fresh) {
        std::cout << "p,holds,x_digits,y_digits";
        if (flag_verbose) std::cout << ",x,y";
        std::cout << "\n";
      }
      conjecture_scan(options, [&](const ConjectureEntry& entry) {
        std::cout << entry.p << ',' << (entry.holds ? 1 : 0) << ',';
        if (entry.solution) {
          std::cout << entry.solution->x.get_str().size() << ','
                    << entry.solution->y.get_str().size();
        } else {
          std::cout << ',';
        }
        if (flag_verbose) {
          if (entry.solution)
            std::cout << ',' << entry.solution->x << ',' << entry.solution->y;
          else
            std::cout << ",,";
        }
        std::cout << "\n";
        if (!entry.holds) {
          counterexample = true;
          std::cout << "{\"counterexample\":{\"p\":" << entry.p;
          if (entry.solution)
            std::cout << ",\"x\":\"" << entry.solution->x << "\",\"y\":\""
                      << entry.solution->y << "\"";
          std::cout << "}}\n";
        }
      });
    } else if (cmd_stats->parsed()) {
      UndeterminedStats s = undetermined_stats(arg_case, arg_p_max, arg_n_max);
      std::cout << "case " << s.case_id << ": " << s.parameters << "\n"
                << "occurrences = " << s.occurrences << "\n"
                << "locally_associated = " << s.locally_associated << "\n";
    }

    if (cache_env && *cache_env) save_unit_cache(cache_env);
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return counterexample ? 2 : 0;
}
