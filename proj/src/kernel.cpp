#include "pdlc/kernel.hpp"

#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>

#include "pdlc/errors.hpp"

namespace pdlc {

namespace {

// Rows 0..n of the q-Pascal triangle, grown on demand.
class TriangleMemo {
 public:
  explicit TriangleMemo(std::int64_t q) : q_(q) {}

  BigInt lookup(Index a, Index b) {
    if (a < 0 || b < 0 || b > a) return 0;
    {
      std::shared_lock lock(mutex_);
      if (static_cast<std::size_t>(a) < rows_.size()) {
        return rows_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      }
    }
    grow(a);
    std::shared_lock lock(mutex_);
    return rows_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  }

  void grow(Index max_a) {
    std::unique_lock lock(mutex_);
    while (static_cast<Index>(rows_.size()) <= max_a) {
      const auto a = rows_.size();
      std::vector<BigInt> row(a + 1);
      row[0] = 1;
      row[a] = 1;
      if (a > 0) {
        const auto& prev = rows_[a - 1];
        ensurePowers(a);
        for (std::size_t b = 1; b < a; ++b) {
          row[b] = prev[b - 1] + powers_[b] * prev[b];
        }
      }
      rows_.push_back(std::move(row));
    }
  }

 private:
  void ensurePowers(std::size_t n) {
    if (powers_.empty()) powers_.emplace_back(1);
    while (powers_.size() <= n) powers_.push_back(powers_.back() * q_);
  }

  std::int64_t q_;
  std::shared_mutex mutex_;
  std::vector<std::vector<BigInt>> rows_;
  std::vector<BigInt> powers_;
};

TriangleMemo& pascalMemo() {
  static TriangleMemo memo(1);
  return memo;
}

void requirePositiveQ(std::int64_t q) {
  if (q < 1) {
    throw std::invalid_argument("q must be a positive integer (got " +
                                std::to_string(q) + ")");
  }
}

}  // namespace

namespace detail {

struct KernelState {
  KernelKind kind = KernelKind::pascal;
  std::int64_t q = 1;
  std::string source;
  std::unique_ptr<TriangleMemo> memo;
  Index table_rows = 0;
  Index table_cols = 0;
  std::vector<BigInt> table;
};

}  // namespace detail

BigInt binomial(Index a, Index b) { return pascalMemo().lookup(a, b); }

BigInt qBinomial(Index a, Index b, std::int64_t q) {
  requirePositiveQ(q);
  if (a < 0 || b < 0 || b > a) return 0;
  // In-place row sweep over columns 0..b, right to left.
  std::vector<BigInt> row(static_cast<std::size_t>(b) + 1);
  std::vector<BigInt> powers(static_cast<std::size_t>(b) + 1);
  powers[0] = 1;
  for (std::size_t t = 1; t < powers.size(); ++t) powers[t] = powers[t - 1] * q;
  row[0] = 1;
  for (Index n = 1; n <= a; ++n) {
    const Index top = std::min(n, b);
    for (Index t = top; t >= 1; --t) {
      const auto u = static_cast<std::size_t>(t);
      row[u] = row[u - 1] + powers[u] * row[u];
    }
  }
  return row[static_cast<std::size_t>(b)];
}

const char* kernelKindName(KernelKind kind) {
  switch (kind) {
    case KernelKind::pascal:
      return "pascal";
    case KernelKind::q_pascal:
      return "q-pascal";
    case KernelKind::table:
      return "table";
  }
  return "unknown";
}

Kernel::Kernel(std::shared_ptr<detail::KernelState> state)
    : state_(std::move(state)) {}

Kernel Kernel::pascal() {
  auto state = std::make_shared<detail::KernelState>();
  state->kind = KernelKind::pascal;
  return Kernel(std::move(state));
}

Kernel Kernel::qPascal(std::int64_t q) {
  requirePositiveQ(q);
  auto state = std::make_shared<detail::KernelState>();
  state->kind = KernelKind::q_pascal;
  state->q = q;
  state->memo = std::make_unique<TriangleMemo>(q);
  return Kernel(std::move(state));
}

Kernel Kernel::table(const std::vector<TableEntry>& entries,
                     std::string source) {
  auto state = std::make_shared<detail::KernelState>();
  state->kind = KernelKind::table;
  state->source = std::move(source);
  std::map<std::pair<Index, Index>, BigInt> cells;
  for (const auto& e : entries) {
    if (e.a < 0 || e.b < 0) {
      throw TableFormatError("table kernel: negative index (" +
                             std::to_string(e.a) + "," + std::to_string(e.b) +
                             ")");
    }
    if (!cells.emplace(std::pair{e.a, e.b}, e.value).second) {
      throw TableFormatError("table kernel: duplicate entry (" +
                             std::to_string(e.a) + "," + std::to_string(e.b) +
                             ")");
    }
    state->table_rows = std::max(state->table_rows, e.a + 1);
    state->table_cols = std::max(state->table_cols, e.b + 1);
  }
  state->table.assign(
      static_cast<std::size_t>(state->table_rows * state->table_cols), 0);
  for (const auto& [pos, value] : cells) {
    state->table[static_cast<std::size_t>(pos.first * state->table_cols +
                                          pos.second)] = value;
  }
  return Kernel(std::move(state));
}

Kernel Kernel::parseTable(std::istream& in, std::string source) {
  std::vector<TableEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    throw TableFormatError("table kernel " +
                           (source.empty() ? std::string("<stream>") : source) +
                           ":" + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1 && line == "a,b,value") continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 3) fail("expected 3 fields `a,b,value`");
    TableEntry e{};
    try {
      std::size_t used = 0;
      e.a = std::stoll(fields[0], &used);
      if (used != fields[0].size()) fail("bad row index");
      e.b = std::stoll(fields[1], &used);
      if (used != fields[1].size()) fail("bad column index");
    } catch (const std::logic_error&) {
      fail("bad index");
    }
    if (e.value.set_str(fields[2], 10) != 0) fail("bad decimal value");
    entries.push_back(std::move(e));
  }
  return table(entries, std::move(source));
}

Kernel Kernel::loadTable(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TableFormatError("cannot open table kernel file: " + path);
  return parseTable(in, path);
}

BigInt Kernel::entry(Index a, Index b) const {
  const auto& s = *state_;
  switch (s.kind) {
    case KernelKind::pascal:
      return binomial(a, b);
    case KernelKind::q_pascal:
      return s.memo->lookup(a, b);
    case KernelKind::table:
      if (a < 0 || b < 0 || a >= s.table_rows || b >= s.table_cols) return 0;
      return s.table[static_cast<std::size_t>(a * s.table_cols + b)];
  }
  return 0;
}

void Kernel::warm(Index max_a) const {
  switch (state_->kind) {
    case KernelKind::pascal:
      pascalMemo().grow(max_a);
      break;
    case KernelKind::q_pascal:
      state_->memo->grow(max_a);
      break;
    case KernelKind::table:
      break;
  }
}

KernelKind Kernel::kind() const { return state_->kind; }
std::int64_t Kernel::q() const { return state_->q; }
const std::string& Kernel::source() const { return state_->source; }
std::pair<Index, Index> Kernel::extent() const {
  return {state_->table_rows, state_->table_cols};
}

}  // namespace pdlc
