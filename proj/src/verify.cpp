#include "pdlc/verify.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <stdexcept>
#include <tuple>

#include "pdlc/errors.hpp"
#include "pdlc/parallel.hpp"
#include "pdlc/seed.hpp"

namespace pdlc {

const char* statusName(CheckStatus status) {
  switch (status) {
    case CheckStatus::holds:
      return "holds";
    case CheckStatus::refuted:
      return "refuted";
    case CheckStatus::error:
      return "error";
  }
  return "error";
}

bool counterexampleLess(const Counterexample& a, const Counterexample& b) {
  const int am = a.m.value_or(-1);
  const int bm = b.m.value_or(-1);
  return std::tie(a.k, a.i, a.j, am, a.note) <
         std::tie(b.k, b.i, b.j, bm, b.note);
}

KernelDescriptor describe(const Kernel& kernel) {
  KernelDescriptor d;
  d.kind = kernelKindName(kernel.kind());
  if (kernel.kind() == KernelKind::q_pascal) d.q = kernel.q();
  if (kernel.kind() == KernelKind::table && !kernel.source().empty()) {
    d.source = kernel.source();
  }
  return d;
}

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json toJson(const Counterexample& c) {
  ordered_json j;
  j["k"] = c.k;
  j["i"] = c.i;
  j["j"] = c.j;
  if (c.m) j["m"] = *c.m;
  j["lhs"] = toDecimal(c.lhs);
  j["rhs"] = toDecimal(c.rhs);
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

// Keeps the `cap` smallest counterexamples while counting all of them.
class CounterexampleSink {
 public:
  explicit CounterexampleSink(std::size_t cap) : cap_(cap) {}

  void add(Counterexample c) {
    ++total_;
    items_.push_back(std::move(c));
    if (items_.size() > 4 * cap_ + 16) prune();
  }

  void merge(CounterexampleSink&& other) {
    total_ += other.total_;
    for (auto& c : other.items_) items_.push_back(std::move(c));
    prune();
  }

  std::size_t total() const { return total_; }

  std::vector<Counterexample> take() {
    prune();
    return std::move(items_);
  }

 private:
  void prune() {
    std::sort(items_.begin(), items_.end(), counterexampleLess);
    if (items_.size() > cap_) items_.resize(cap_);
  }

  std::size_t cap_;
  std::size_t total_ = 0;
  std::vector<Counterexample> items_;
};

struct ScanError {
  bool set = false;
  std::tuple<int, Index, Index> where{};
  std::string message;
  std::string kind;

  void offer(int k, Index i, Index j, std::string msg, std::string what) {
    const auto pos = std::tuple{k, i, j};
    if (!set || pos < where) {
      set = true;
      where = pos;
      message = std::move(msg);
      kind = std::move(what);
    }
  }
};

void finalize(CheckReport& report, CounterexampleSink& sink,
              std::size_t cap) {
  const auto total = sink.total();
  report.counterexamples = sink.take();
  report.truncated = total > cap;
  if (report.error) {
    report.status = CheckStatus::error;
  } else {
    report.status = total == 0 ? CheckStatus::holds : CheckStatus::refuted;
  }
}

CheckReport baseReport(std::string claim_id, const Kernel& kernel,
                       const ScanWindow& w) {
  CheckReport r;
  r.claim_id = std::move(claim_id);
  r.kernel = describe(kernel);
  r.params.k_min = w.k_min;
  r.params.k_max = w.k_max;
  r.params.i_max = w.i_max;
  r.params.j_max = w.j_max;
  return r;
}

enum class CellOutcome { pass, fail, skip };

// Evaluates `eval(k, i, j, cx)` over every cell of the window in parallel.
// The evaluator fills `cx` (lhs, rhs, note) when it returns fail.
template <class Eval>
void scanWindow(const ScanWindow& w, const CheckOptions& options,
                CheckReport& report, Eval eval) {
  const int k_lo = std::max(w.k_min, 1);
  const std::int64_t nk = std::max(0, w.k_max - k_lo + 1);
  const std::int64_t ni = w.i_max + 1;
  const std::int64_t nj = w.j_max + 1;
  const std::int64_t total = nk * ni * nj;

  CounterexampleSink sink(options.cap);
  ScanError error;
  std::size_t checked = 0;
  std::size_t skipped = 0;
  const int threads = resolveThreads(options.threads);

#pragma omp parallel num_threads(threads)
  {
    CounterexampleSink local(options.cap);
    ScanError local_error;
    std::size_t local_checked = 0;
    std::size_t local_skipped = 0;
#pragma omp for schedule(dynamic, 256) nowait
    for (std::int64_t t = 0; t < total; ++t) {
      const int k = k_lo + static_cast<int>(t / (ni * nj));
      const Index i = (t / nj) % ni;
      const Index j = t % nj;
      Counterexample cx;
      try {
        switch (eval(k, i, j, cx)) {
          case CellOutcome::pass:
            ++local_checked;
            break;
          case CellOutcome::skip:
            ++local_skipped;
            break;
          case CellOutcome::fail:
            ++local_checked;
            cx.k = k;
            cx.i = i;
            cx.j = j;
            local.add(std::move(cx));
            break;
        }
      } catch (const WindowError& e) {
        local_error.offer(k, i, j, e.what(), "window");
      }
    }
#pragma omp critical(pdlc_scan_merge)
    {
      sink.merge(std::move(local));
      checked += local_checked;
      skipped += local_skipped;
      if (local_error.set) {
        const auto [k, i, j] = local_error.where;
        error.offer(k, i, j, local_error.message, local_error.kind);
      }
    }
  }

  report.checked_count += checked;
  if (skipped > 0 || report.skipped_count) {
    report.skipped_count = report.skipped_count.value_or(0) + skipped;
  }
  if (error.set) {
    report.error = error.message;
    report.error_kind = error.kind;
  }
  finalize(report, sink, options.cap);
}

}  // namespace

nlohmann::ordered_json reportToJson(const CheckReport& r) {
  ordered_json j;
  j["claim_id"] = r.claim_id;
  ordered_json kernel;
  kernel["kind"] = r.kernel.kind;
  if (r.kernel.q) kernel["q"] = *r.kernel.q;
  if (r.kernel.source) kernel["source"] = *r.kernel.source;
  j["kernel"] = kernel;
  ordered_json params;
  params["k_min"] = r.params.k_min;
  params["k_max"] = r.params.k_max;
  params["i_max"] = r.params.i_max;
  params["j_max"] = r.params.j_max;
  if (r.params.depth) params["depth"] = *r.params.depth;
  if (r.params.trials) params["trials"] = *r.params.trials;
  if (r.params.seed) params["seed"] = *r.params.seed;
  if (r.params.max_len) params["max_len"] = *r.params.max_len;
  j["params"] = params;
  j["status"] = statusName(r.status);
  j["checked_count"] = r.checked_count;
  if (r.skipped_count) j["skipped_count"] = *r.skipped_count;
  auto cxs = ordered_json::array();
  for (const auto& c : r.counterexamples) cxs.push_back(toJson(c));
  j["counterexamples"] = cxs;
  j["truncated"] = r.truncated;
  if (!r.observations.empty()) {
    auto obs = ordered_json::array();
    for (const auto& o : r.observations) {
      ordered_json oj;
      oj["label"] = o.label;
      oj["count"] = o.count;
      auto samples = ordered_json::array();
      for (const auto& c : o.samples) samples.push_back(toJson(c));
      oj["samples"] = samples;
      oj["truncated"] = o.truncated;
      obs.push_back(oj);
    }
    j["observations"] = obs;
  }
  if (r.error) j["error"] = *r.error;
  if (r.error_kind) j["error_kind"] = *r.error_kind;
  if (r.depth_reached) j["depth_reached"] = *r.depth_reached;
  j["timing_ms"] = r.timing_ms;
  j["tool_version"] = kToolVersion;
  return j;
}

std::string renderReport(const CheckReport& report) {
  return reportToJson(report).dump(2) + "\n";
}

CheckReport checkDodgsonAdjacent(const PDHierarchy& h, DodgsonForm form,
                                 const ScanWindow& window,
                                 const CheckOptions& options) {
  auto report = baseReport(form == DodgsonForm::eq1 ? "dodgson-eq1"
                                                    : "dodgson-eq2",
                           h.kernel(), window);
  scanWindow(window, options, report,
             [&](int k, Index i, Index j, Counterexample& cx) {
               // eq2 is eq1 anchored one column to the left.
               const Index c = form == DodgsonForm::eq1 ? j : j - 1;
               BigInt lhs = h.at(k + 1, i, c) * h.at(k - 1, i + 1, c + 1);
               BigInt rhs = h.at(k, i, c) * h.at(k, i + 1, c + 1) -
                            h.at(k, i, c + 1) * h.at(k, i + 1, c);
               if (lhs == rhs) return CellOutcome::pass;
               cx.lhs = std::move(lhs);
               cx.rhs = std::move(rhs);
               return CellOutcome::fail;
             });
  return report;
}

CheckReport checkFactorization(const PDHierarchy& h, const ScanWindow& window,
                               const CheckOptions& options) {
  auto report = baseReport("factorization", h.kernel(), window);
  scanWindow(window, options, report,
             [&](int k, Index i, Index j, Counterexample& cx) {
               const BigInt& mid = h.at(k, i, j);
               BigInt lhs = mid * mid - h.at(k, i, j - 1) * h.at(k, i, j + 1);
               BigInt rhs = h.at(k - 1, i, j) * h.at(k + 1, i, j);
               if (lhs == rhs) return CellOutcome::pass;
               cx.lhs = std::move(lhs);
               cx.rhs = std::move(rhs);
               return CellOutcome::fail;
             });
  return report;
}

CheckReport checkSlidingRule(const PDHierarchy& h, const ScanWindow& window,
                             const CheckOptions& options) {
  auto report = baseReport("sliding-rule", h.kernel(), window);
  report.skipped_count = 0;
  scanWindow(window, options, report,
             [&](int k, Index i, Index j, Counterexample& cx) {
               if (j < 1) return CellOutcome::skip;
               if (sgn(h.at(k, i + 1, j)) == 0 || sgn(h.at(k, i, j + 1)) == 0) {
                 return CellOutcome::skip;
               }
               BigInt lhs = h.at(k, i + 1, j - 1) * h.at(k, i, j + 1);
               BigInt rhs = h.at(k, i, j) * h.at(k, i + 1, j + 1);
               if (lhs == rhs) return CellOutcome::pass;
               cx.lhs = std::move(lhs);
               cx.rhs = std::move(rhs);
               return CellOutcome::fail;
             });
  return report;
}

ResidualEvaluation evaluateHadamardResidual(const RowSeq& a, const RowSeq& x,
                                            Index j) {
  const BigInt& a0 = a.get(j - 1);
  const BigInt& a1 = a.get(j);
  const BigInt& a2 = a.get(j + 1);
  const BigInt& x0 = x.get(j - 1);
  const BigInt& x1 = x.get(j);
  const BigInt& x2 = x.get(j + 1);

  ResidualEvaluation out;
  const BigInt prod_mid = a1 * x1;
  const BigInt lc_prod = prod_mid * prod_mid - (a0 * x0) * (a2 * x2);
  const BigInt lc_a = a1 * a1 - a0 * a2;
  const BigInt lc_x = x1 * x1 - x0 * x2;
  out.direct = lc_prod - lc_a * lc_x;

  const BigInt outer_a = a0 * a2;
  const BigInt outer_x = x0 * x2;
  out.closed_form =
      a1 * a1 * outer_x + outer_a * x1 * x1 - 2 * outer_a * outer_x;
  return out;
}

BigInt hadamardResidual(const RowSeq& a, const RowSeq& x, Index j) {
  return evaluateHadamardResidual(a, x, j).direct;
}

std::vector<Index> equalityRemarkDiscrepancies(const RowSeq& a,
                                               const RowSeq& x) {
  std::vector<Index> out;
  const Index lo = std::min(a.origin(), x.origin());
  const Index hi = std::max(a.end(), x.end());
  for (Index j = lo; j < hi; ++j) {
    bool interior = true;
    for (Index d = -1; d <= 1; ++d) {
      interior = interior && sgn(a.get(j + d)) > 0 && sgn(x.get(j + d)) > 0;
    }
    if (!interior) continue;
    const bool a_linear = a.get(j) * a.get(j) == a.get(j - 1) * a.get(j + 1);
    const bool x_linear = x.get(j) * x.get(j) == x.get(j - 1) * x.get(j + 1);
    if ((a_linear || x_linear) && sgn(hadamardResidual(a, x, j)) != 0) {
      out.push_back(j);
    }
  }
  return out;
}

RowSeq randomLogConcaveRow(std::mt19937_64& rng, std::size_t length) {
  const auto len = static_cast<Index>(length);
  std::vector<BigInt> row(length, BigInt(1));
  std::uniform_int_distribution<int> factor_count(1, 3);
  std::uniform_int_distribution<int> coin(0, 1);
  const int factors = factor_count(rng);
  for (int f = 0; f < factors; ++f) {
    if (coin(rng) == 0) {
      // C(n, j - shift): contiguous support, log-concave.
      std::uniform_int_distribution<Index> n_dist(0, len + 2);
      std::uniform_int_distribution<Index> shift_dist(-2, len - 1);
      const Index n = n_dist(rng);
      const Index shift = shift_dist(rng);
      for (Index j = 0; j < len; ++j) {
        row[static_cast<std::size_t>(j)] *= binomial(n, j - shift);
      }
    } else {
      // c * r^j: log-linear.
      std::uniform_int_distribution<int> c_dist(1, 5);
      std::uniform_int_distribution<int> r_dist(1, 4);
      BigInt term = c_dist(rng);
      const int ratio = r_dist(rng);
      for (Index j = 0; j < len; ++j) {
        row[static_cast<std::size_t>(j)] *= term;
        term *= ratio;
      }
    }
  }
  return RowSeq(0, std::move(row));
}

CheckReport checkHadamardInequality(std::size_t trials, std::uint64_t seed,
                                    std::size_t max_len,
                                    const CheckOptions& options) {
  CheckReport report;
  report.claim_id = "hadamard";
  report.kernel.kind = "random-log-concave-rows";
  report.params.k_min = 0;
  report.params.k_max = trials == 0 ? 0 : static_cast<int>(trials) - 1;
  report.params.i_max = 0;
  report.params.j_max = max_len == 0 ? 0 : static_cast<Index>(max_len) - 1;
  report.params.trials = trials;
  report.params.seed = seed;
  report.params.max_len = max_len;
  if (max_len < 3) {
    report.status = CheckStatus::error;
    report.error = "max_len must be at least 3";
    report.error_kind = "usage";
    return report;
  }

  CounterexampleSink sink(options.cap);
  CounterexampleSink remark(options.cap);
  std::size_t checked = 0;
  ScanError error;
  const auto n = static_cast<std::int64_t>(trials);
  const int threads = resolveThreads(options.threads);
  binomial(static_cast<Index>(max_len) + 2, 0);  // warm the shared memo

#pragma omp parallel num_threads(threads)
  {
    CounterexampleSink local(options.cap);
    CounterexampleSink local_remark(options.cap);
    ScanError local_error;
    std::size_t local_checked = 0;
#pragma omp for schedule(dynamic, 8) nowait
    for (std::int64_t t = 0; t < n; ++t) {
      std::mt19937_64 rng(deriveSeed(seed, {t}));
      std::uniform_int_distribution<std::size_t> len_dist(3, max_len);
      const std::size_t len = len_dist(rng);
      const RowSeq a = randomLogConcaveRow(rng, len);
      const RowSeq x = randomLogConcaveRow(rng, len);
      const int trial = static_cast<int>(t);
      for (const RowSeq* row : {&a, &x}) {
        const auto verdict = isLogConcaveRow(*row);
        if (!verdict.log_concave) {
          local_error.offer(trial, 0, *verdict.first_violation,
                            "generator produced a row that is not log-concave",
                            "generator");
        }
      }
      const RowSeq lc_a = lcRow(a);
      const RowSeq lc_x = lcRow(x);
      const RowSeq lc_ax = lcRow(hadamard(a, x));
      for (Index j = 0; j < static_cast<Index>(len); ++j) {
        ++local_checked;
        const auto res = evaluateHadamardResidual(a, x, j);
        const BigInt lhs = lc_ax.get(j);
        const BigInt rhs = lc_a.get(j) * lc_x.get(j);
        if (lhs - rhs != res.direct) {
          local_error.offer(trial, 0, j, "row LC disagrees with residual expansion",
                            "generator");
        }
        if (res.direct != res.closed_form) {
          local.add({trial, 0, j, std::nullopt, res.direct, res.closed_form,
                     "closed-form"});
        }
        if (sgn(res.direct) < 0) {
          local.add({trial, 0, j, std::nullopt, lhs, rhs, "inequality"});
        }
      }
      for (Index j : equalityRemarkDiscrepancies(a, x)) {
        local_remark.add({trial, 0, j, std::nullopt, hadamardResidual(a, x, j),
                          BigInt(0), "equality-remark"});
      }
    }
#pragma omp critical(pdlc_hadamard_merge)
    {
      sink.merge(std::move(local));
      remark.merge(std::move(local_remark));
      checked += local_checked;
      if (local_error.set) {
        const auto [k, i, j] = local_error.where;
        error.offer(k, i, j, local_error.message, local_error.kind);
      }
    }
  }

  report.checked_count = checked;
  if (error.set) {
    report.error = error.message;
    report.error_kind = error.kind;
  }
  Observation obs;
  obs.label = "equality-remark-discrepancy";
  obs.count = remark.total();
  obs.truncated = remark.total() > options.cap;
  obs.samples = remark.take();
  report.observations.push_back(std::move(obs));
  finalize(report, sink, options.cap);
  return report;
}

CheckReport checkInfiniteLCDepth(const PDHierarchy& h, int m_max,
                                 const ScanWindow& window,
                                 const CheckOptions& options) {
  auto report = baseReport("infinite-lc", h.kernel(), window);
  report.params.depth = m_max;
  const Index width = std::max(window.i_max, window.j_max) + 1;
  report.params.j_max = width - 1;

  CounterexampleSink sink(options.cap);
  CounterexampleSink gaps(options.cap);
  int reached = m_max;
  for (int k = std::max(window.k_min, 1); k <= window.k_max; ++k) {
    if (!h.covers(k, window.i_max, width - 1)) {
      report.error = "hierarchy does not cover PD_" + std::to_string(k) +
                     " on [0," + std::to_string(window.i_max) + "]x[0," +
                     std::to_string(width - 1) + "]";
      report.error_kind = "window";
      break;
    }
    BigGrid g = h.level(k).reframe(0, 0,
                                   static_cast<std::size_t>(window.i_max + 1),
                                   static_cast<std::size_t>(width));
    int m = 0;
    try {
      for (m = 1; m <= m_max; ++m) {
        const auto predicted = predictedLcBits(g);
        if (predicted > options.bit_budget) {
          throw BudgetExceededError(m - 1, predicted, options.bit_budget);
        }
        g = lcGrid(g, options.threads);
        report.checked_count += g.cellCount();
        for (const auto& p : negativePositions(g)) {
          sink.add({k, p.i, p.j, m, g.get(p.i, p.j), BigInt(0), ""});
        }
        for (Index i = 0; i <= window.i_max; ++i) {
          const auto row = g.rowSpan(i);
          Index first = -1;
          Index last = -1;
          for (Index j = 0; j < width; ++j) {
            if (sgn(row[static_cast<std::size_t>(j)]) != 0) {
              if (first < 0) first = j;
              last = j;
            }
          }
          for (Index j = first + 1; first >= 0 && j < last; ++j) {
            if (sgn(row[static_cast<std::size_t>(j)]) == 0) {
              gaps.add({k, i, j, m, BigInt(0), BigInt(0), "support-gap"});
              break;
            }
          }
        }
      }
    } catch (const BudgetExceededError& e) {
      report.error = e.what();
      report.error_kind = "budget-exceeded";
      reached = std::min(reached, e.depth_reached);
      break;
    }
  }
  report.depth_reached = report.error ? reached : m_max;
  Observation obs;
  obs.label = "support-gap";
  obs.count = gaps.total();
  obs.truncated = gaps.total() > options.cap;
  obs.samples = gaps.take();
  report.observations.push_back(std::move(obs));
  finalize(report, sink, options.cap);
  return report;
}

CheckReport checkKDirection(const PDHierarchy& h, KDirection direction,
                            const ScanWindow& window,
                            const CheckOptions& options) {
  auto report = baseReport(direction == KDirection::as_stated
                               ? "k-direction-stated"
                               : "k-direction-reversed",
                           h.kernel(), window);
  scanWindow(window, options, report,
             [&](int m, Index i, Index j, Counterexample& cx) {
               const BigInt& mid = h.at(m + 1, i, j);
               BigInt outer = h.at(m, i, j) * h.at(m + 2, i, j);
               BigInt square = mid * mid;
               const bool as_stated = direction == KDirection::as_stated;
               BigInt lhs = as_stated ? std::move(outer) : std::move(square);
               BigInt rhs = as_stated ? std::move(square) : std::move(outer);
               if (lhs >= rhs) return CellOutcome::pass;
               cx.lhs = std::move(lhs);
               cx.rhs = std::move(rhs);
               return CellOutcome::fail;
             });
  return report;
}

CheckReport probeKernelFactorization(const Kernel& kernel,
                                     const ScanWindow& window,
                                     const HierarchyOptions& hierarchy,
                                     const CheckOptions& options) {
  HierarchyOptions opts = hierarchy;
  opts.on_inexact = InexactPolicy::record;
  if (opts.threads == 0) opts.threads = options.threads;
  const auto h = buildHierarchy(kernel, window.k_max + 1, window.i_max,
                                window.j_max, opts);
  auto report = checkFactorization(h, window, options);
  report.claim_id = "kernel-probe";
  Observation obs;
  obs.label = "inexact-division";
  obs.count = h.stats().inexact.size();
  obs.truncated = obs.count > options.cap;
  for (const auto& p : h.stats().inexact) {
    if (obs.samples.size() == options.cap) break;
    obs.samples.push_back({p.k, p.i, p.j, std::nullopt, BigInt(0), BigInt(0),
                           "condensation-inexact-division"});
  }
  report.observations.push_back(std::move(obs));
  return report;
}

namespace {

constexpr std::array<std::pair<Claim, std::string_view>, 9> kClaimIds{{
    {Claim::factorization, "factorization"},
    {Claim::dodgson_eq1, "dodgson-eq1"},
    {Claim::dodgson_eq2, "dodgson-eq2"},
    {Claim::sliding_rule, "sliding-rule"},
    {Claim::hadamard, "hadamard"},
    {Claim::infinite_lc, "infinite-lc"},
    {Claim::k_direction_stated, "k-direction-stated"},
    {Claim::k_direction_reversed, "k-direction-reversed"},
    {Claim::kernel_probe, "kernel-probe"},
}};

}  // namespace

std::string_view claimId(Claim claim) {
  for (const auto& [c, id] : kClaimIds) {
    if (c == claim) return id;
  }
  return "unknown";
}

std::optional<Claim> parseClaim(std::string_view id) {
  for (const auto& [c, name] : kClaimIds) {
    if (name == id) return c;
  }
  return std::nullopt;
}

const std::vector<Claim>& allClaims() {
  static const std::vector<Claim> claims = [] {
    std::vector<Claim> out;
    for (const auto& entry : kClaimIds) out.push_back(entry.first);
    return out;
  }();
  return claims;
}

int hierarchyOrderFor(Claim claim, int k_max) {
  switch (claim) {
    case Claim::factorization:
    case Claim::dodgson_eq1:
    case Claim::dodgson_eq2:
    case Claim::kernel_probe:
      return k_max + 1;
    case Claim::k_direction_stated:
    case Claim::k_direction_reversed:
      return k_max + 2;
    case Claim::sliding_rule:
      // Reads row i + 1 and column j + 1 of PD_k.
      return k_max + 1;
    case Claim::infinite_lc:
      return k_max;
    case Claim::hadamard:
      return 0;
  }
  return k_max;
}

CheckReport runClaim(const ClaimRequest& req) {
  const auto start = std::chrono::steady_clock::now();
  CheckReport report;
  auto fail = [&](const std::string& id, const std::string& what,
                  const std::string& kind) {
    report = baseReport(id, req.kernel, req.window);
    report.status = CheckStatus::error;
    report.error = what;
    report.error_kind = kind;
  };
  const std::string id(claimId(req.claim));
  HierarchyOptions hopts = req.hierarchy;
  if (hopts.threads == 0) hopts.threads = req.options.threads;

  try {
    switch (req.claim) {
      case Claim::hadamard:
        report = checkHadamardInequality(req.trials, req.seed, req.max_len,
                                         req.options);
        break;
      case Claim::kernel_probe:
        report = probeKernelFactorization(req.kernel, req.window, hopts,
                                          req.options);
        break;
      default: {
        Index j_max = req.window.j_max;
        Index i_max = req.window.i_max;
        if (req.claim == Claim::infinite_lc) {
          j_max = std::max(j_max, i_max);
        }
        const int order = hierarchyOrderFor(req.claim, req.window.k_max);
        const auto h = buildHierarchy(req.kernel, order, i_max, j_max, hopts);
        switch (req.claim) {
          case Claim::factorization:
            report = checkFactorization(h, req.window, req.options);
            break;
          case Claim::dodgson_eq1:
            report = checkDodgsonAdjacent(h, DodgsonForm::eq1, req.window,
                                          req.options);
            break;
          case Claim::dodgson_eq2:
            report = checkDodgsonAdjacent(h, DodgsonForm::eq2, req.window,
                                          req.options);
            break;
          case Claim::sliding_rule:
            report = checkSlidingRule(h, req.window, req.options);
            break;
          case Claim::infinite_lc:
            report = checkInfiniteLCDepth(h, req.depth, req.window,
                                          req.options);
            break;
          case Claim::k_direction_stated:
            report = checkKDirection(h, KDirection::as_stated, req.window,
                                     req.options);
            break;
          case Claim::k_direction_reversed:
            report = checkKDirection(h, KDirection::reversed, req.window,
                                     req.options);
            break;
          default:
            break;
        }
      }
    }
  } catch (const WindowOverflowError& e) {
    fail(id, e.what(), "window-overflow");
  } catch (const BudgetExceededError& e) {
    fail(id, e.what(), "budget-exceeded");
  } catch (const OracleMismatchError& e) {
    fail(id, e.what(), "oracle-mismatch");
  } catch (const InexactDivisionError& e) {
    fail(id, e.what(), "inexact-division");
  } catch (const WindowError& e) {
    fail(id, e.what(), "window");
  }
  if (req.record_timing) {
    report.timing_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  }
  return report;
}

}  // namespace pdlc
