#include "core/spectral.hpp"
#include "laws/laws.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <thread>

namespace relcalc {

void Checker::note(double r, const char* what) {
  if (!(r <= residual_)) residual_ = std::isnan(r) ? 1e300 : r;
  if (!(r <= tol) && failure_.empty()) {
    char buf[64];
    std::snprintf(buf, sizeof buf, " (residual %.3e)", r);
    failure_ = std::string(what) + buf;
  }
}

void Checker::same(const Relation& a, const Relation& b, const char* what) { note(opening(a, b), what); }
void Checker::same(const Subspace& a, const Subspace& b, const char* what) { note(opening(a, b), what); }
void Checker::sub(const Relation& a, const Relation& b, const char* what) { note(excess(a.graph(), b.graph()), what); }
void Checker::sub(const Subspace& a, const Subspace& b, const char* what) { note(excess(a, b), what); }
void Checker::value(double residual, const char* what) { note(residual, what); }

void Checker::truth(bool ok, const char* what) {
  if (ok) return;
  truth_ok_ = false;
  if (failure_.empty()) failure_ = std::string(what) + " (false)";
}

void Checker::iff(bool p, bool q, const char* what) {
  if (p == q) return;
  truth_ok_ = false;
  if (failure_.empty()) failure_ = std::string(what) + (p ? " (left holds, right fails)" : " (right holds, left fails)");
}

bool Checker::ok() const { return truth_ok_ && residual_ <= tol; }

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t master, const std::string& law_id, size_t trial) {
  return splitmix64(splitmix64(master) ^ splitmix64(fnv1a(law_id) + static_cast<std::uint64_t>(trial)));
}

int trial_dim(const DimRange& dims, size_t trial) {
  const int span = dims.hi - dims.lo + 1;
  return dims.lo + static_cast<int>(trial % static_cast<size_t>(span));
}

TrialResult run_trial(const Law& law, std::uint64_t seed, int n) {
  TrialResult r;
  Rng rng(seed);
  Checker ck;
  try {
    law.body(rng, n, ck);
    r.residual = ck.residual();
    r.ok = ck.ok();
    r.vacuous = ck.is_vacuous();
    r.witness = ck.first_failure();
  } catch (const std::exception& e) {
    r.ok = false;
    r.residual = ck.residual();
    r.witness = std::string("exception: ") + e.what();
  }
  return r;
}

LawReport run_law(const std::string& law_id, size_t trials, DimRange dims, std::uint64_t seed, unsigned threads) {
  const Law& law = find_law(law_id);
  if (dims.lo < 1 || dims.hi < dims.lo) throw Error(ErrorCode::InvalidArgument, "invalid dimension range");
  std::vector<TrialResult> results(trials);
  std::vector<std::uint64_t> seeds(trials);
  for (size_t t = 0; t < trials; ++t) seeds[t] = trial_seed(seed, law_id, t);

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<size_t>(threads, std::max<size_t>(trials, 1)));
  std::atomic<size_t> next{0};
  auto work = [&]() {
    for (size_t t; (t = next.fetch_add(1)) < trials;) results[t] = run_trial(law, seeds[t], trial_dim(dims, t));
  };
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  LawReport rep;
  rep.law_id = law.id;
  rep.statement = law.statement;
  rep.degenerate = law.degenerate;
  rep.trials = trials;
  for (size_t t = 0; t < trials; ++t) {
    const TrialResult& r = results[t];
    rep.max_residual = std::max(rep.max_residual, r.residual);
    if (r.vacuous) ++rep.vacuous;
    if (!r.ok) rep.failures.push_back({t, seeds[t], trial_dim(dims, t), r.residual, r.witness});
  }
  return rep;
}

std::vector<LawReport> run_all(size_t trials, DimRange dims, std::uint64_t seed, unsigned threads) {
  std::vector<LawReport> out;
  for (const Law& l : law_registry()) out.push_back(run_law(l.id, trials, dims, seed, threads));
  return out;
}

std::string format_report_line(const LawReport& r) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s %-20s trials=%zu vacuous=%zu failures=%zu max_residual=%.3e", r.pass() ? "PASS" : "FAIL",
                r.law_id.c_str(), r.trials, r.vacuous, r.failures.size(), r.max_residual);
  std::string s = buf;
  if (r.degenerate) s += " [degenerate: vacuously/trivially true in finite dimension]";
  for (const TrialFailure& f : r.failures) {
    std::snprintf(buf, sizeof buf, "\n  trial %zu n=%d seed=0x%016llx residual=%.3e: ", f.trial, f.n,
                  static_cast<unsigned long long>(f.seed), f.residual);
    s += buf + f.witness;
  }
  return s;
}

}  // namespace relcalc
