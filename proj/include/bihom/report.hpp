#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "bihom/linalg.hpp"

namespace bihom {

struct Violation {
  std::vector<std::size_t> tuple;  // 0-based basis indices
  std::string clause;              // which displayed condition failed
  Vector residual;
};

/// Outcome of checking one identity exhaustively on basis tuples.
struct VerificationReport {
  std::string identity;
  std::size_t tuples_checked = 0;
  std::vector<Violation> violations;
  std::vector<std::string> notes;

  bool holds() const { return violations.empty(); }
  explicit operator bool() const { return holds(); }

  void merge(VerificationReport other) {
    tuples_checked += other.tuples_checked;
    for (auto& v : other.violations) violations.push_back(std::move(v));
    for (auto& n : other.notes) notes.push_back(std::move(n));
  }
};

struct VerifyOptions {
  bool fail_fast = false;
};

/// Raised when an operation's hypotheses do not hold; carries the reports
/// that witness the failure.
class precondition_error : public std::runtime_error {
 public:
  precondition_error(const std::string& what,
                     std::vector<VerificationReport> reports = {})
      : std::runtime_error(what), reports_(std::move(reports)) {}

  const std::vector<VerificationReport>& reports() const { return reports_; }

 private:
  std::vector<VerificationReport> reports_;
};

/// Worker count for tuple loops: BIHOM_MAX_THREADS caps it, default is the
/// hardware concurrency.
inline unsigned max_threads() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("BIHOM_MAX_THREADS")) {
    char* end = nullptr;
    long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

/// Checker for one basis tuple: returns (clause, residual) pairs for every
/// clause whose residual is nonzero.
using TupleCheck =
    std::function<void(const std::vector<std::size_t>&,
                       std::vector<std::pair<std::string, Vector>>&)>;

/// Runs `check` over every tuple in {0..dim-1}^arity in lexicographic order.
/// Violations are always reported in that order, whatever the worker count.
inline VerificationReport check_all_tuples(std::string identity, std::size_t dim,
                                           std::size_t arity,
                                           const TupleCheck& check,
                                           const VerifyOptions& opts = {}) {
  VerificationReport report;
  report.identity = std::move(identity);

  auto run_range = [&](std::size_t first_lo, std::size_t first_hi,
                       VerificationReport& out) {
    std::vector<std::size_t> t(arity, 0);
    std::vector<std::pair<std::string, Vector>> failures;
    for (std::size_t head = first_lo; head < first_hi; ++head) {
      std::fill(t.begin(), t.end(), 0);
      if (arity > 0) t[0] = head;
      while (true) {
        failures.clear();
        check(t, failures);
        ++out.tuples_checked;
        for (auto& [clause, residual] : failures)
          out.violations.push_back({t, std::move(clause), std::move(residual)});
        if (opts.fail_fast && !out.violations.empty()) return;
        bool done = true;
        for (std::size_t k = arity; k-- > 1;) {
          if (++t[k] < dim) {
            done = false;
            break;
          }
          t[k] = 0;
        }
        if (done) break;
      }
    }
  };

  if (arity == 0) {
    std::vector<std::pair<std::string, Vector>> failures;
    check({}, failures);
    report.tuples_checked = 1;
    for (auto& [clause, residual] : failures)
      report.violations.push_back({{}, std::move(clause), std::move(residual)});
    return report;
  }

  const unsigned workers =
      opts.fail_fast ? 1u : std::min<unsigned>(max_threads(), static_cast<unsigned>(dim));
  if (workers <= 1) {
    run_range(0, dim, report);
    return report;
  }
  std::vector<VerificationReport> parts(workers);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t lo = dim * w / workers;
      const std::size_t hi = dim * (w + 1) / workers;
      pool.emplace_back([&, lo, hi, w] { run_range(lo, hi, parts[w]); });
    }
  }
  for (auto& p : parts) report.merge(std::move(p));
  return report;
}

/// Helper for clause residuals: records (clause, residual) if nonzero.
inline void expect_zero(std::vector<std::pair<std::string, Vector>>& failures,
                        const std::string& clause, Vector residual) {
  if (!is_zero(residual)) failures.emplace_back(clause, std::move(residual));
}

}  // namespace bihom
