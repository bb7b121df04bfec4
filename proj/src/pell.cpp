#include "quadorder/pell.hpp"

#include <atomic>
#include <fstream>
#include <thread>

#include "quadorder/arith.hpp"
#include "quadorder/errors.hpp"
#include "quadorder/laorder.hpp"
#include "quadorder/quadfield.hpp"

namespace quadorder {

namespace {

unsigned effective_threads(unsigned requested) {
  if (requested != 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  return hw > 8 ? 8 : hw;
}

std::uint64_t read_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) return 0;  // fresh scan
  std::uint64_t last = 0;
  if (!(in >> last))
    throw ParseError("conjecture checkpoint '" + path +
                     "': expected a single integer (last completed prime)");
  return last;
}

void write_checkpoint(const std::string& path, std::uint64_t last) {
  std::ofstream out(path, std::ios::trunc);
  if (!out.good())
    throw ParseError("conjecture checkpoint '" + path + "': not writable");
  out << last << "\n";
}

ConjectureEntry scan_one(std::uint64_t p) {
  ConjectureEntry entry;
  entry.p = p;
  if (p == 2) {
    entry.holds = is_locally_associated_direct(mpz_class{2}, 2);
    return entry;
  }
  PellSolution sol = pell_min_solution(p);
  entry.holds = !mpz_divisible_ui_p(sol.y.get_mpz_t(), p);
  entry.solution = std::move(sol);
  return entry;
}

}  // namespace

PellSolution pell_min_solution(std::uint64_t p) {
  if (p == 2 || !is_prime(p))
    throw DomainError("pell_min_solution: p must be an odd prime (got " +
                      std::to_string(p) + ")");
  SqrtConvergents cf(p);
  for (;;) {
    if (cf.residual() == 1) return PellSolution{p, cf.p(), cf.q()};
    cf.advance();
  }
}

bool conjecture_check(std::uint64_t p) {
  if (!is_prime(p)) throw DomainError("conjecture_check: p must be prime");
  return scan_one(p).holds;
}

bool theorem41_check(std::uint64_t p) {
  if (p == 2 || !is_prime(p))
    throw DomainError("theorem41_check: p must be an odd prime");
  const bool pell_holds = scan_one(p).holds;
  const bool direct = is_locally_associated_direct(
      mpz_class{static_cast<unsigned long>(p)}, static_cast<std::int64_t>(p));
  return pell_holds == direct;
}

void conjecture_scan(const ScanOptions& options,
                     const std::function<void(const ConjectureEntry&)>& sink) {
  if (options.p_max < 2)
    throw DomainError("conjecture_scan: p_max must be >= 2");
  std::uint64_t resume_after = 0;
  if (!options.checkpoint_path.empty())
    resume_after = read_checkpoint(options.checkpoint_path);

  std::vector<std::uint64_t> primes = primes_up_to(options.p_max);
  std::erase_if(primes,
                [resume_after](std::uint64_t p) { return p <= resume_after; });

  const unsigned threads = effective_threads(options.threads);
  constexpr std::size_t kChunk = 256;
  std::vector<ConjectureEntry> results;
  for (std::size_t begin = 0; begin < primes.size(); begin += kChunk) {
    const std::size_t end = std::min(begin + kChunk, primes.size());
    results.assign(end - begin, ConjectureEntry{});
    if (threads <= 1 || end - begin < 2) {
      for (std::size_t i = begin; i < end; ++i)
        results[i - begin] = scan_one(primes[i]);
    } else {
      std::atomic<std::size_t> next{begin};
      std::vector<std::thread> workers;
      for (unsigned t = 0; t < threads; ++t) {
        workers.emplace_back([&] {
          for (std::size_t i; (i = next.fetch_add(1)) < end;)
            results[i - begin] = scan_one(primes[i]);
        });
      }
      for (std::thread& w : workers) w.join();
    }
    for (const ConjectureEntry& entry : results) sink(entry);
    if (!options.checkpoint_path.empty())
      write_checkpoint(options.checkpoint_path, primes[end - 1]);
  }
}

std::vector<ConjectureEntry> conjecture_scan(std::uint64_t p_max) {
  std::vector<ConjectureEntry> out;
  ScanOptions options;
  options.p_max = p_max;
  conjecture_scan(options,
                  [&out](const ConjectureEntry& e) { out.push_back(e); });
  return out;
}

}  // namespace quadorder
