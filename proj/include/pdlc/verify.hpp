#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pdlc/grid.hpp"
#include "pdlc/hierarchy.hpp"
#include "pdlc/kernel.hpp"
#include "pdlc/logconcavity.hpp"

namespace pdlc {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr std::size_t kDefaultCounterexampleCap = 10;

enum class CheckStatus { holds, refuted, error };
const char* statusName(CheckStatus status);

/// One failed exact comparison. For window scans (k, i, j) is the anchor
/// cell; `m` is the LC depth when one applies. Randomized checks put the
/// trial index in `k`.
struct Counterexample {
  int k = 0;
  Index i = 0;
  Index j = 0;
  std::optional<int> m;
  BigInt lhs;
  BigInt rhs;
  std::string note;
};

bool counterexampleLess(const Counterexample& a, const Counterexample& b);

/// Side finding attached to a report without affecting its status.
struct Observation {
  std::string label;
  std::size_t count = 0;
  std::vector<Counterexample> samples;
  bool truncated = false;
};

struct KernelDescriptor {
  std::string kind;
  std::optional<std::int64_t> q;
  std::optional<std::string> source;
};
KernelDescriptor describe(const Kernel& kernel);

struct CheckParams {
  int k_min = 1;
  int k_max = 1;
  Index i_max = 0;
  Index j_max = 0;
  std::optional<int> depth;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> max_len;
};

struct CheckReport {
  std::string claim_id;
  KernelDescriptor kernel;
  CheckParams params;
  CheckStatus status = CheckStatus::holds;
  std::size_t checked_count = 0;
  std::optional<std::size_t> skipped_count;
  std::vector<Counterexample> counterexamples;
  bool truncated = false;
  std::int64_t timing_ms = 0;
  std::vector<Observation> observations;
  std::optional<std::string> error;
  std::optional<std::string> error_kind;
  std::optional<int> depth_reached;
};

nlohmann::ordered_json reportToJson(const CheckReport& report);
/// Pretty-printed JSON followed by a newline.
std::string renderReport(const CheckReport& report);

struct ScanWindow {
  int k_min = 1;
  int k_max = 1;
  Index i_max = 0;
  Index j_max = 0;
};

struct CheckOptions {
  std::size_t cap = kDefaultCounterexampleCap;
  int threads = 0;
  std::uint64_t bit_budget = kDefaultBitBudget;
};

enum class DodgsonForm { eq1, eq2 };
enum class KDirection { as_stated, reversed };

/// PD_{k+1} PD_{k-1} against the 2x2 determinant of adjacent PD_k entries.
/// eq1 anchors at (i, j); eq2 is the same identity shifted to column j - 1.
CheckReport checkDodgsonAdjacent(const PDHierarchy& h, DodgsonForm form,
                                 const ScanWindow& window,
                                 const CheckOptions& options = {});

/// LC(PD_k)(i, j) == PD_{k-1}(i, j) PD_{k+1}(i, j).
CheckReport checkFactorization(const PDHierarchy& h, const ScanWindow& window,
                               const CheckOptions& options = {});

/// PD_k(i+1, j-1) PD_k(i, j+1) == PD_k(i, j) PD_k(i+1, j+1), the ratio rule
/// with denominators PD_k(i+1, j) and PD_k(i, j+1) cleared. Cells with j < 1
/// or a zero denominator are skipped and counted.
CheckReport checkSlidingRule(const PDHierarchy& h, const ScanWindow& window,
                             const CheckOptions& options = {});

/// Both routes to LC(a.x)_j - LC(a)_j LC(x)_j.
struct ResidualEvaluation {
  BigInt direct;       ///< expand the three LC terms
  BigInt closed_form;  ///< a_j^2 X + A x_j^2 - 2 A X, A = a_{j-1}a_{j+1}, X likewise
};
ResidualEvaluation evaluateHadamardResidual(const RowSeq& a, const RowSeq& x,
                                            Index j);
/// Exact residual by direct expansion.
BigInt hadamardResidual(const RowSeq& a, const RowSeq& x, Index j);

/// Interior positions where one factor is log-linear (all six neighbours
/// positive and LC(a)_j == 0 or LC(x)_j == 0) yet the residual is nonzero.
std::vector<Index> equalityRemarkDiscrepancies(const RowSeq& a,
                                               const RowSeq& x);

/// Random non-negative log-concave row of the given length: an entrywise
/// product of shifted binomial rows and geometric rows.
RowSeq randomLogConcaveRow(std::mt19937_64& rng, std::size_t length);

/// Seeded property run of LC(A.X) >= LC(A).LC(X) over random row pairs.
CheckReport checkHadamardInequality(std::size_t trials, std::uint64_t seed,
                                    std::size_t max_len,
                                    const CheckOptions& options = {});

/// LC^m(PD_k) >= 0 for every k in the window and m = 1..m_max. Each level is
/// cropped to [0, i_max] x [0, max(i_max, j_max)] so whole rows are iterated.
CheckReport checkInfiniteLCDepth(const PDHierarchy& h, int m_max,
                                 const ScanWindow& window,
                                 const CheckOptions& options = {});

/// as_stated: PD_m PD_{m+2} >= PD_{m+1}^2. reversed: PD_{m+1}^2 >= PD_m PD_{m+2}.
/// The window's k range is the range of m.
CheckReport checkKDirection(const PDHierarchy& h, KDirection direction,
                            const ScanWindow& window,
                            const CheckOptions& options = {});

/// Builds the hierarchy of an arbitrary kernel (oracle fallback on, inexact
/// divisions recorded rather than raised) and runs checkFactorization on it.
CheckReport probeKernelFactorization(const Kernel& kernel,
                                     const ScanWindow& window,
                                     const HierarchyOptions& hierarchy = {},
                                     const CheckOptions& options = {});

enum class Claim {
  factorization,
  dodgson_eq1,
  dodgson_eq2,
  sliding_rule,
  hadamard,
  infinite_lc,
  k_direction_stated,
  k_direction_reversed,
  kernel_probe,
};

std::string_view claimId(Claim claim);
std::optional<Claim> parseClaim(std::string_view id);
const std::vector<Claim>& allClaims();

/// Hierarchy order a claim needs to test orders up to k_max.
int hierarchyOrderFor(Claim claim, int k_max);

struct ClaimRequest {
  Claim claim = Claim::factorization;
  Kernel kernel = Kernel::pascal();
  ScanWindow window;
  int depth = 1;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  std::size_t max_len = 12;
  bool record_timing = false;
  CheckOptions options;
  HierarchyOptions hierarchy;
};

/// Builds what the claim needs and evaluates it. Resource and correctness
/// failures come back as status error with error_kind set to one of
/// window-overflow, budget-exceeded, window, oracle-mismatch,
/// inexact-division, generator.
CheckReport runClaim(const ClaimRequest& request);

}  // namespace pdlc
