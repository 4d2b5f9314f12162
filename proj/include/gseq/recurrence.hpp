#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gseq {

struct KFoldSpec {
  std::uint64_t k = 1;        // fold depth of the inner composition
  std::uint64_t horizon = 1;  // fill G(1..horizon)
};

/// Raised when a nested lookup lands outside the already-filled prefix.
/// Carries the offending n and the inner index chain for reporting.
class well_definedness_error : public std::runtime_error {
 public:
  well_definedness_error(std::uint64_t n, std::vector<std::uint64_t> chain, std::string msg)
      : std::runtime_error(std::move(msg)), n_(n), chain_(std::move(chain)) {}

  std::uint64_t offending_n() const noexcept { return n_; }
  const std::vector<std::uint64_t>& chain() const noexcept { return chain_; }

 private:
  std::uint64_t n_;
  std::vector<std::uint64_t> chain_;
};

/// Memoized values of G(n) = n - G(G^k(n-1)), G(1) = 1, filled in ascending n.
/// Immutable once built; extension produces a new table.
class SequenceTable {
 public:
  std::uint64_t horizon() const noexcept { return values_.size() - 1; }
  std::uint64_t fold_k() const noexcept { return k_; }

  std::uint64_t at(std::uint64_t n) const {
    if (n < 1 || n > horizon())
      throw std::out_of_range("SequenceTable::at(" + std::to_string(n) + "): horizon is " +
                              std::to_string(horizon()));
    return values_[static_cast<std::size_t>(n)];
  }

  /// Terms G(1..horizon) in order.
  std::span<const std::uint64_t> terms() const noexcept {
    return {values_.data() + 1, values_.size() - 1};
  }

  /// New table for a larger horizon, reusing this prefix.
  SequenceTable extended(std::uint64_t new_horizon) const {
    if (new_horizon < horizon())
      throw std::invalid_argument("SequenceTable::extended: new horizon is smaller");
    SequenceTable t(*this);
    t.values_.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(new_horizon, 1u << 24)) + 1);
    fill(t.values_, new_horizon, k_);
    return t;
  }

  /// Wraps raw terms (terms[0] = G(1)) without validation. Meant for
  /// experiments and fault-injection tests.
  static SequenceTable from_values(std::vector<std::uint64_t> terms, std::uint64_t k = 1) {
    if (terms.empty()) throw std::invalid_argument("SequenceTable::from_values: no terms");
    SequenceTable t;
    t.k_ = k;
    t.values_.reserve(terms.size() + 1);
    t.values_.push_back(0);
    t.values_.insert(t.values_.end(), terms.begin(), terms.end());
    return t;
  }

 private:
  SequenceTable() = default;

  // Ascending fill. Each value is n minus a (k+1)-deep lookup chain; every
  // index referenced must already be filled (1 <= c < n) or the recursion is
  // not well-defined at n.
  static void fill(std::vector<std::uint64_t>& v, std::uint64_t horizon, std::uint64_t k) {
    if (v.empty()) {
      v.push_back(0);
      v.push_back(1);  // G(1) = 1
    }
    std::vector<std::uint64_t> chain;
    auto fail = [&](std::uint64_t n) {
      std::string msg = "recursion not well-defined at n=" + std::to_string(n) + ": chain";
      for (std::uint64_t x : chain) msg += " " + std::to_string(x);
      msg += " leaves the filled range [1, " + std::to_string(n - 1) + "]";
      throw well_definedness_error(n, chain, std::move(msg));
    };
    for (std::uint64_t n = v.size(); n <= horizon; ++n) {
      std::uint64_t c = n - 1;
      chain.assign(1, c);
      for (std::uint64_t step = 0; step <= k; ++step) {
        if (c < 1 || c >= n) fail(n);
        c = v[static_cast<std::size_t>(c)];
        chain.push_back(c);
      }
      if (c >= n) fail(n);  // n - c must stay a positive term
      v.push_back(n - c);
      if (k == 1 && !(v[n] == v[n - 1] || v[n] == v[n - 1] + 1))
        throw std::logic_error("slow-growth violated at n=" + std::to_string(n) +
                               " while filling the k=1 table");
    }
  }

  friend SequenceTable eval_kfold(const KFoldSpec& spec);

  std::vector<std::uint64_t> values_;  // values_[0] unused
  std::uint64_t k_ = 1;
};

/// Fills G(1..horizon) for the k-fold recursion. Throws
/// well_definedness_error if a lookup leaves the filled prefix.
inline SequenceTable eval_kfold(const KFoldSpec& spec) {
  if (spec.k < 1) throw std::invalid_argument("eval_kfold: k must be >= 1");
  if (spec.horizon < 1) throw std::invalid_argument("eval_kfold: horizon must be >= 1");
  SequenceTable t;
  t.k_ = spec.k;
  t.values_.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(spec.horizon, 1u << 24)) + 1);
  SequenceTable::fill(t.values_, spec.horizon, spec.k);
  return t;
}

/// The classical sequence: G(n) = n - G(G(n-1)), G(1) = 1.
inline SequenceTable eval_g(std::uint64_t horizon) {
  return eval_kfold(KFoldSpec{.k = 1, .horizon = horizon});
}

struct KFoldFailure {
  std::uint64_t n = 0;
  std::vector<std::uint64_t> chain;
  std::string message;
};

struct KFoldRun {
  SequenceTable table;                 // filled up to the last well-defined n
  std::optional<KFoldFailure> failure; // set when the fill stopped early
};

/// Like eval_kfold but reports a well-definedness failure instead of
/// throwing, keeping the partial table.
inline KFoldRun try_eval_kfold(const KFoldSpec& spec) {
  try {
    return {eval_kfold(spec), std::nullopt};
  } catch (const well_definedness_error& e) {
    KFoldSpec partial{spec.k, e.offending_n() - 1};
    return {eval_kfold(partial), KFoldFailure{e.offending_n(), e.chain(), e.what()}};
  }
}

/// Frequency sequence f(m) = #{ n <= horizon : G(n) = m }. Counts are
/// complete only below the last value reached.
class FrequencyTable {
 public:
  explicit FrequencyTable(const SequenceTable& table) {
    std::uint64_t max_value = 0;
    for (std::uint64_t v : table.terms()) max_value = v > max_value ? v : max_value;
    counts_.assign(static_cast<std::size_t>(max_value) + 1, 0);
    for (std::uint64_t v : table.terms()) ++counts_[static_cast<std::size_t>(v)];
    complete_upto_ = table.at(table.horizon()) - 1;
  }

  std::uint64_t count(std::uint64_t m) const {
    if (m < 1 || m >= counts_.size())
      throw std::out_of_range("FrequencyTable::count(" + std::to_string(m) + ")");
    return counts_[static_cast<std::size_t>(m)];
  }

  /// Largest m whose preimage is provably complete at this horizon.
  std::uint64_t complete_upto() const noexcept { return complete_upto_; }

  /// Largest value that occurred at all (its count may still be growing).
  std::uint64_t max_value() const noexcept { return counts_.size() - 1; }

 private:
  std::vector<std::uint64_t> counts_;  // counts_[0] unused
  std::uint64_t complete_upto_ = 0;
};

inline FrequencyTable frequency(const SequenceTable& table) { return FrequencyTable(table); }

struct SlowReport {
  bool slow = true;
  std::uint64_t first_violation = 0;  // smallest n with G(n) - G(n-1) outside {0,1}; 0 if none
};

/// Consecutive differences must all be 0 or 1.
inline SlowReport is_slow(const SequenceTable& table) {
  for (std::uint64_t n = 2; n <= table.horizon(); ++n) {
    const std::uint64_t prev = table.at(n - 1);
    const std::uint64_t cur = table.at(n);
    if (cur != prev && cur != prev + 1) return {false, n};
  }
  return {true, 0};
}

}  // namespace gseq
