#pragma once

#include "laws/generate.hpp"

#include <functional>
#include <string>
#include <vector>

namespace relcalc {

// Accumulates residuals and boolean checks inside one trial.
class Checker {
 public:
  void same(const Relation& a, const Relation& b, const char* what);
  void same(const Subspace& a, const Subspace& b, const char* what);
  void sub(const Relation& a, const Relation& b, const char* what);
  void sub(const Subspace& a, const Subspace& b, const char* what);
  void value(double residual, const char* what);  // residual must be <= tol
  void truth(bool ok, const char* what);
  void iff(bool p, bool q, const char* what);
  void vacuous() { vacuous_ = true; }

  double residual() const { return residual_; }
  bool ok() const;
  bool is_vacuous() const { return vacuous_; }
  const std::string& first_failure() const { return failure_; }
  double tol = kEqualTol;

 private:
  void note(double r, const char* what);
  double residual_ = 0.0;
  bool truth_ok_ = true;
  bool vacuous_ = false;
  std::string failure_;
};

struct Law {
  std::string id;
  std::string statement;  // the identity being checked
  bool degenerate = false;
  std::function<void(Rng&, int n, Checker&)> body;
};

const std::vector<Law>& law_registry();
const Law& find_law(const std::string& id);  // throws UnknownLaw

struct TrialFailure {
  size_t trial;
  std::uint64_t seed;
  int n;
  double residual;
  std::string witness;
};

struct LawReport {
  std::string law_id;
  std::string statement;
  bool degenerate = false;
  size_t trials = 0;
  size_t vacuous = 0;
  double max_residual = 0.0;
  std::vector<TrialFailure> failures;
  bool pass() const { return failures.empty(); }
};

struct DimRange {
  int lo = 2, hi = 2;
};

std::uint64_t trial_seed(std::uint64_t master, const std::string& law_id, size_t trial);
int trial_dim(const DimRange& dims, size_t trial);

struct TrialResult {
  double residual = 0.0;
  bool ok = true;
  bool vacuous = false;
  std::string witness;
};
TrialResult run_trial(const Law& law, std::uint64_t seed, int n);

// threads = 0: hardware concurrency.
LawReport run_law(const std::string& law_id, size_t trials, DimRange dims, std::uint64_t seed, unsigned threads = 0);
std::vector<LawReport> run_all(size_t trials, DimRange dims, std::uint64_t seed, unsigned threads = 0);

std::string format_report_line(const LawReport& r);

}  // namespace relcalc
