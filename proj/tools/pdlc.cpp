// Command-line frontend: compute PD_k grids, adjudicate claims, benchmark
// condensation against per-entry determinants.
//
// Exit codes: 0 holds/success, 1 refuted or mismatch, 2 usage, 3 resource.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pdlc/errors.hpp"
#include "pdlc/grid.hpp"
#include "pdlc/hierarchy.hpp"
#include "pdlc/kernel.hpp"
#include "pdlc/logconcavity.hpp"
#include "pdlc/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

struct RunConfig {
  std::string kernel = "pascal";
  std::int64_t q = 1;
  std::string table_path;
  int k = 1;
  bool all_levels = false;
  int k_min = 1;
  int k_max = 3;
  int m_max = 3;
  std::int64_t i_max = 10;
  std::int64_t j_max = -1;
  int bench_k_max = 6;
  std::int64_t bench_i_max = 100;
  std::size_t trials = 1000;
  std::size_t max_len = 12;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string out;
  std::size_t cap = pdlc::kDefaultCounterexampleCap;
  std::uint64_t bit_budget = pdlc::kDefaultBitBudget;
  std::size_t entry_budget = pdlc::kDefaultEntryBudget;
  int parallel = 0;
  double cross_check = pdlc::kDefaultCrossCheckFraction;
  bool timing = false;
  int repeat = 1;
  bool inject_fault = false;
  std::string claim;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

pdlc::Kernel makeKernel(const RunConfig& cfg) {
  if (cfg.kernel == "pascal") return pdlc::Kernel::pascal();
  if (cfg.kernel == "q-pascal") return pdlc::Kernel::qPascal(cfg.q);
  if (cfg.kernel == "table") {
    if (cfg.table_path.empty()) {
      throw UsageError("--kernel table requires --table PATH");
    }
    try {
      return pdlc::Kernel::loadTable(cfg.table_path);
    } catch (const pdlc::TableFormatError& e) {
      throw UsageError(e.what());
    }
  }
  throw UsageError("--kernel: unknown kind '" + cfg.kernel + "'");
}

std::int64_t effectiveJMax(const RunConfig& cfg) {
  return cfg.j_max < 0 ? cfg.i_max : cfg.j_max;
}

pdlc::HierarchyOptions hierarchyOptions(const RunConfig& cfg) {
  pdlc::HierarchyOptions o;
  o.cross_check_fraction = cfg.cross_check;
  o.seed = cfg.seed;
  o.entry_budget = cfg.entry_budget;
  o.threads = cfg.parallel;
  return o;
}

// Writes to --out when given, otherwise standard output.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw UsageError("--out: cannot open '" + path + "'");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

nlohmann::ordered_json kernelJson(const pdlc::Kernel& kernel) {
  const auto d = pdlc::describe(kernel);
  nlohmann::ordered_json j;
  j["kind"] = d.kind;
  if (d.q) j["q"] = *d.q;
  if (d.source) j["source"] = *d.source;
  return j;
}

int cmdCompute(const RunConfig& cfg) {
  const auto kernel = makeKernel(cfg);
  const auto j_max = effectiveJMax(cfg);
  std::optional<pdlc::PDHierarchy> built;
  try {
    built.emplace(pdlc::buildHierarchy(kernel, cfg.k, cfg.i_max, j_max,
                                       hierarchyOptions(cfg)));
  } catch (const pdlc::WindowOverflowError& e) {
    std::cerr << "pdlc compute: " << e.what() << '\n';
    return kExitResource;
  } catch (const pdlc::Error& e) {
    std::cerr << "pdlc compute: " << e.what() << '\n';
    return kExitRefuted;
  }
  const pdlc::PDHierarchy& h = *built;

  const int first = cfg.all_levels ? 0 : cfg.k;
  const auto rows = static_cast<std::size_t>(cfg.i_max + 1);
  const auto cols = static_cast<std::size_t>(j_max + 1);
  Output out(cfg.out);
  auto& os = out.stream();
  if (cfg.format == "csv") {
    pdlc::writeCsvHeader(os);
    for (int k = first; k <= cfg.k; ++k) {
      pdlc::writeGridCsv(os, k, h.level(k).reframe(0, 0, rows, cols));
    }
    return kExitOk;
  }
  nlohmann::ordered_json doc;
  doc["kernel"] = kernelJson(kernel);
  doc["max_order"] = cfg.k;
  doc["i_max"] = cfg.i_max;
  doc["j_max"] = j_max;
  doc["entry_budget"] = cfg.entry_budget;
  doc["cross_check"] = cfg.cross_check;
  doc["seed"] = cfg.seed;
  doc["tool_version"] = pdlc::kToolVersion;
  auto levels = nlohmann::ordered_json::array();
  for (int k = first; k <= cfg.k; ++k) {
    const auto grid = h.level(k).reframe(0, 0, rows, cols);
    nlohmann::ordered_json level;
    level["k"] = k;
    auto table = nlohmann::ordered_json::array();
    for (pdlc::Index i = 0; i <= cfg.i_max; ++i) {
      auto row = nlohmann::ordered_json::array();
      for (const auto& v : grid.rowSpan(i)) row.push_back(pdlc::toDecimal(v));
      table.push_back(row);
    }
    level["rows"] = table;
    levels.push_back(level);
  }
  doc["levels"] = levels;
  os << doc.dump(2) << '\n';
  return kExitOk;
}

int exitCodeFor(const pdlc::CheckReport& report) {
  switch (report.status) {
    case pdlc::CheckStatus::holds:
      return kExitOk;
    case pdlc::CheckStatus::refuted:
      return kExitRefuted;
    case pdlc::CheckStatus::error:
      break;
  }
  const auto kind = report.error_kind.value_or("");
  if (kind == "usage") return kExitUsage;
  if (kind == "oracle-mismatch" || kind == "inexact-division" ||
      kind == "generator") {
    return kExitRefuted;
  }
  return kExitResource;
}

void writeReportCsv(std::ostream& os, const pdlc::CheckReport& report) {
  os << "claim_id,status,k,i,j,m,lhs,rhs,note\n";
  for (const auto& c : report.counterexamples) {
    os << report.claim_id << ',' << pdlc::statusName(report.status) << ','
       << c.k << ',' << c.i << ',' << c.j << ','
       << (c.m ? std::to_string(*c.m) : std::string()) << ','
       << pdlc::toDecimal(c.lhs) << ',' << pdlc::toDecimal(c.rhs) << ','
       << c.note << '\n';
  }
}

int cmdVerify(const RunConfig& cfg) {
  const auto claim = pdlc::parseClaim(cfg.claim);
  if (!claim) throw UsageError("verify: unknown claim '" + cfg.claim + "'");

  pdlc::ClaimRequest req;
  req.claim = *claim;
  req.kernel = makeKernel(cfg);
  req.window.k_min = cfg.k_min;
  req.window.k_max = cfg.k_max;
  req.window.i_max = cfg.i_max;
  req.window.j_max = effectiveJMax(cfg);
  if (*claim == pdlc::Claim::k_direction_stated ||
      *claim == pdlc::Claim::k_direction_reversed) {
    req.window.k_max = cfg.m_max;
  }
  req.depth = cfg.m_max;
  req.trials = cfg.trials;
  req.seed = cfg.seed;
  req.max_len = cfg.max_len;
  req.record_timing = cfg.timing;
  req.options.cap = cfg.cap;
  req.options.threads = cfg.parallel;
  req.options.bit_budget = cfg.bit_budget;
  req.hierarchy = hierarchyOptions(cfg);

  const auto report = pdlc::runClaim(req);
  Output out(cfg.out);
  if (cfg.format == "csv") {
    writeReportCsv(out.stream(), report);
  } else {
    out.stream() << pdlc::renderReport(report);
  }
  return exitCodeFor(report);
}

double millisSince(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

template <class Fn>
auto timed(int repeat, double& best_ms, Fn fn) {
  best_ms = std::numeric_limits<double>::infinity();
  std::optional<decltype(fn())> result;
  for (int r = 0; r < std::max(repeat, 1); ++r) {
    const auto start = std::chrono::steady_clock::now();
    result.emplace(fn());
    best_ms = std::min(best_ms, millisSince(start));
  }
  return std::move(*result);
}

pdlc::PDHierarchy withFault(const pdlc::PDHierarchy& h) {
  std::vector<pdlc::BigGrid> levels = h.levels();
  const int k = h.maxOrder();
  const auto& g = levels.back();
  levels.back() = pdlc::BigGrid::generate(
      g.originI(), g.originJ(), g.rows(), g.cols(),
      [&](pdlc::Index i, pdlc::Index j) {
        pdlc::BigInt v = g.get(i, j);
        if (i == 0 && j == 0) v += 1;
        return v;
      });
  return pdlc::PDHierarchy(h.kernel(), k, h.iMax(), h.jMax(),
                           std::move(levels));
}

int cmdBench(const RunConfig& cfg) {
  const auto kernel = makeKernel(cfg);
  const auto j_max = cfg.j_max < 0 ? cfg.bench_i_max : cfg.j_max;
  auto opts = hierarchyOptions(cfg);
  opts.cross_check_fraction = 0.0;

  double cond_ms = 0;
  double serial_ms = 0;
  double direct_ms = 0;
  try {
    const auto cond = timed(cfg.repeat, cond_ms, [&] {
      return pdlc::buildHierarchy(kernel, cfg.bench_k_max, cfg.bench_i_max, j_max, opts);
    });
    const auto serial = timed(cfg.repeat, serial_ms, [&] {
      return pdlc::reference::buildHierarchy(kernel, cfg.bench_k_max, cfg.bench_i_max,
                                             j_max);
    });
    auto direct = timed(cfg.repeat, direct_ms, [&] {
      return pdlc::buildHierarchyDirect(kernel, cfg.bench_k_max, cfg.bench_i_max, j_max,
                                        opts);
    });
    if (cfg.inject_fault) direct = withFault(direct);

    auto diff = pdlc::firstDifference(cond, direct);
    if (!diff) diff = pdlc::firstDifference(cond, serial);
    std::size_t max_bits = 0;
    for (const auto& g : cond.levels()) max_bits = std::max(max_bits, g.maxBits());

    nlohmann::ordered_json doc;
    doc["kernel"] = kernelJson(kernel);
    doc["max_order"] = cfg.bench_k_max;
    doc["i_max"] = cfg.bench_i_max;
    doc["j_max"] = j_max;
    doc["threads"] = cfg.parallel;
    doc["repeat"] = cfg.repeat;
    nlohmann::ordered_json methods;
    methods["condensation"] = {{"wall_ms", cond_ms}};
    methods["condensation_serial"] = {{"wall_ms", serial_ms}};
    methods["direct"] = {{"wall_ms", direct_ms}};
    doc["methods"] = methods;
    doc["entries"] = cond.cellCount();
    doc["max_bits"] = max_bits;
    doc["identical"] = !diff.has_value();
    if (diff) {
      doc["first_difference"] = {{"k", diff->k}, {"i", diff->i}, {"j", diff->j}};
    } else {
      doc["speedup"] = direct_ms / std::max(cond_ms, 1e-6);
      doc["speedup_parallel_over_serial"] = serial_ms / std::max(cond_ms, 1e-6);
    }
    doc["tool_version"] = pdlc::kToolVersion;
    Output out(cfg.out);
    out.stream() << doc.dump(2) << '\n';
    return diff ? kExitRefuted : kExitOk;
  } catch (const pdlc::WindowOverflowError& e) {
    std::cerr << "pdlc bench: " << e.what() << '\n';
    return kExitResource;
  }
}

void addKernelFlags(CLI::App& app, RunConfig& cfg) {
  app.add_option("--kernel", cfg.kernel, "Kernel kind")
      ->check(CLI::IsMember({"pascal", "q-pascal", "table"}))
      ->capture_default_str();
  app.add_option("--q", cfg.q, "q for the q-pascal kernel (integer >= 1)")
      ->check(CLI::Range(std::int64_t{1}, std::numeric_limits<std::int64_t>::max()))
      ->capture_default_str();
  app.add_option("--table", cfg.table_path,
                 "CSV `a,b,value` file for the table kernel");
}

void addWindowFlags(CLI::App& app, RunConfig& cfg, std::int64_t& i_max) {
  app.add_option("--imax", i_max, "Largest row index i")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--jmax", cfg.j_max, "Largest column index j (default: imax)")
      ->check(CLI::NonNegativeNumber);
}

void addResourceFlags(CLI::App& app, RunConfig& cfg) {
  app.add_option("--entry-budget", cfg.entry_budget,
                 "Max grid cells across all hierarchy levels")
      ->envname("PDLC_ENTRY_BUDGET")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--parallel", cfg.parallel,
                 "Worker threads (0 = OpenMP default)")
      ->envname("PDLC_PARALLEL")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "Seed for sampling and random trials")
      ->capture_default_str();
  app.add_option("--cross-check", cfg.cross_check,
                 "Fraction of condensation cells re-derived by the oracle")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  app.add_option("--out", cfg.out, "Output file (default: standard output)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pascal determinantal arrays and the log-concavity operator"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* compute = app.add_subcommand("compute", "Emit PD_k grids");
  addKernelFlags(*compute, cfg);
  addWindowFlags(*compute, cfg, cfg.i_max);
  addResourceFlags(*compute, cfg);
  compute->add_option("--k", cfg.k, "Order k of the emitted level")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  compute->add_flag("--all-levels", cfg.all_levels, "Emit levels 0..k");
  compute->add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Evaluate one claim over a window");
  std::string claims_help = "Claim id:";
  for (auto c : pdlc::allClaims()) claims_help += " " + std::string(pdlc::claimId(c));
  verify->add_option("claim", cfg.claim, claims_help)->required();
  addKernelFlags(*verify, cfg);
  addWindowFlags(*verify, cfg, cfg.i_max);
  addResourceFlags(*verify, cfg);
  verify->add_option("--kmin", cfg.k_min, "Smallest order k tested")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  verify->add_option("--kmax", cfg.k_max, "Largest order k tested")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  verify->add_option("--mmax,--depth", cfg.m_max,
                     "LC depth for infinite-lc; largest m for k-direction-*")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  verify->add_option("--trials", cfg.trials, "Random trials (hadamard)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  verify->add_option("--max-len", cfg.max_len, "Max random row length (hadamard)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  verify->add_option("--cap", cfg.cap, "Counterexamples kept per report")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  verify->add_option("--bit-budget", cfg.bit_budget,
                     "Max predicted total bits per LC iterate")
      ->envname("PDLC_BIT_BUDGET")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  verify->add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  verify->add_flag("--timing", cfg.timing,
                   "Record wall time in timing_ms (reports stop being "
                   "byte-reproducible)");

  auto* bench = app.add_subcommand(
      "bench", "Time condensation against per-entry determinants");
  addKernelFlags(*bench, cfg);
  addWindowFlags(*bench, cfg, cfg.bench_i_max);
  addResourceFlags(*bench, cfg);
  bench->add_option("--kmax", cfg.bench_k_max, "Hierarchy order K")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  bench->add_option("--repeat", cfg.repeat, "Best of N runs per method")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench->add_flag("--inject-fault", cfg.inject_fault)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (compute->parsed()) return cmdCompute(cfg);
    if (verify->parsed()) return cmdVerify(cfg);
    if (bench->parsed()) return cmdBench(cfg);
  } catch (const UsageError& e) {
    std::cerr << "pdlc: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "pdlc: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
