#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "quadsq/criteria.hpp"
#include "quadsq/oracle.hpp"

namespace quadsq {
namespace oracle {

// One decided-and-searched element of the coefficient grid.
struct ScanRow {
  QuadInt alpha;
  criteria::Decision decision;
  std::optional<WitnessPair> witness;
  std::optional<long long> bound_used;
  bool contradiction = false;
};

struct ScanReport {
  long long count_solvable = 0;
  long long count_unsolvable = 0;
  long long count_unknown = 0;
  long long max_witness_bound = 0;
  std::vector<ScanRow> rows;            // row-major over a, then b
  std::vector<size_t> contradictions;   // indices into rows (must stay empty)
  std::vector<size_t> unknowns;         // indices of UnknownByCriterion rows
};

inline unsigned resolve_jobs(unsigned jobs) {
  if (jobs > 0) return jobs;
  if (const char* env = std::getenv("QUADSQ_JOBS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? hc : 1;
}

// Runs the criterion against the exhaustive search over every nonzero alpha
// with |a|, |b| <= coeff_range. A Solvable verdict must produce a witness
// within the bound schedule; a non-Solvable verdict must not have one at the
// final bound. The same schedule feeds the criterion's own fallback, so the
// two sides always see the same search horizon.
inline ScanReport cross_check(const FieldSpec& f, long long coeff_range,
                              std::vector<long long> bound_schedule =
                                  {10, 50, 200, 500},
                              unsigned jobs = 0) {
  if (coeff_range < 0)
    throw DomainError("cross_check: coefficient range must be >= 0");
  if (bound_schedule.empty())
    throw DomainError("cross_check: bound schedule must be non-empty");
  for (size_t i = 0; i < bound_schedule.size(); ++i) {
    if (bound_schedule[i] < 1 ||
        (i > 0 && bound_schedule[i] <= bound_schedule[i - 1]))
      throw DomainError("cross_check: bound schedule must be positive and increasing");
  }

  std::vector<QuadInt> grid;
  for (long long a = -coeff_range; a <= coeff_range; ++a)
    for (long long b = -coeff_range; b <= coeff_range; ++b) {
      if (a == 0 && b == 0) continue;
      grid.push_back(QuadInt{Int(a), Int(b), f.m});
    }

  ScanReport report;
  report.rows.resize(grid.size());
  const long long final_bound = bound_schedule.back();

  unsigned nthreads = resolve_jobs(jobs);
  nthreads = std::max(1u, std::min<unsigned>(nthreads, grid.size() ? grid.size() : 1));

  std::mutex err_mutex;
  std::exception_ptr first_error;

  auto work = [&](unsigned tid) {
    try {
      for (size_t i = tid; i < grid.size(); i += nthreads) {
        ScanRow row;
        row.alpha = grid[i];
        row.decision = criteria::decide(f, grid[i], bound_schedule);
        if (row.decision.verdict == criteria::Verdict::Solvable) {
          for (long long b : bound_schedule) {
            if (auto w = brute_force(f, grid[i], b)) {
              row.witness = w;
              row.bound_used = b;
              break;
            }
          }
          row.contradiction = !row.witness.has_value();
        } else {
          if (auto w = brute_force(f, grid[i], final_bound)) {
            row.witness = w;
            row.bound_used = final_bound;
            row.contradiction = true;
          }
        }
        report.rows[i] = std::move(row);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(err_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  };

  if (nthreads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  for (size_t i = 0; i < report.rows.size(); ++i) {
    const ScanRow& row = report.rows[i];
    switch (row.decision.verdict) {
      case criteria::Verdict::Solvable:
        ++report.count_solvable;
        if (row.bound_used)
          report.max_witness_bound =
              std::max(report.max_witness_bound, *row.bound_used);
        break;
      case criteria::Verdict::Unsolvable:
        ++report.count_unsolvable;
        break;
      case criteria::Verdict::UnknownByCriterion:
        ++report.count_unknown;
        report.unknowns.push_back(i);
        break;
    }
    if (row.contradiction) report.contradictions.push_back(i);
  }
  return report;
}

}  // namespace oracle
}  // namespace quadsq
