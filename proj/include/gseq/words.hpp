#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gseq/recurrence.hpp"

namespace gseq {

// Finite word over the alphabet {1, 2}, stored as the characters '1'/'2'.
struct Word {
  std::string symbols;

  std::size_t size() const noexcept { return symbols.size(); }
  bool operator==(const Word&) const = default;
};

inline bool word_valid(const Word& w) noexcept {
  for (char c : w.symbols)
    if (c != '1' && c != '2') return false;
  return true;
}

inline Word word_from_string(std::string s) {
  Word w{std::move(s)};
  if (!word_valid(w))
    throw std::invalid_argument("word_from_string: symbols must be '1' or '2'");
  return w;
}

// Concatenation family: w_n for n <= seeds.size() is the seed, after that
// w_n = w_{n-back_a} w_{n-back_b}.
struct FamilyRule {
  std::vector<std::string> seeds;
  std::uint32_t back_a = 2;
  std::uint32_t back_b = 1;
};

inline void validate_rule(const FamilyRule& rule) {
  if (rule.seeds.empty()) throw std::invalid_argument("word family: no seed words");
  for (const auto& s : rule.seeds) {
    if (s.empty()) throw std::invalid_argument("word family: empty seed word");
    for (char c : s)
      if (c != '1' && c != '2')
        throw std::invalid_argument("word family: seed symbols must be '1' or '2'");
  }
  if (rule.back_a < 1 || rule.back_b < 1)
    throw std::invalid_argument("word family: back-references must be >= 1");
  if (rule.back_a > rule.seeds.size() || rule.back_b > rule.seeds.size())
    throw std::invalid_argument(
        "word family: back-reference reaches before w_1 (dangling reference)");
}

namespace detail {

inline std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) noexcept {
  return a > std::numeric_limits<std::uint64_t>::max() - b
             ? std::numeric_limits<std::uint64_t>::max()
             : a + b;
}

// Lazy expansion of one family: saturating lengths plus prefix emission by
// structural descent, so nothing is materialized beyond what is asked for.
class FamilyExpander {
 public:
  explicit FamilyExpander(FamilyRule rule) : rule_(std::move(rule)) {
    validate_rule(rule_);
    for (const auto& s : rule_.seeds) len_.push_back(s.size());
  }

  std::uint64_t length(std::uint32_t n) {
    if (n < 1) throw std::invalid_argument("word family: indices start at 1");
    while (len_.size() < n)
      len_.push_back(sat_add(len_[len_.size() - rule_.back_a], len_[len_.size() - rule_.back_b]));
    return len_[n - 1];
  }

  /// Appends the first min(budget, |w_n|) symbols of w_n.
  void emit_prefix(std::uint32_t n, std::uint64_t budget, std::string& out) {
    if (budget == 0) return;
    length(n);  // make sure len_ covers n
    if (n <= rule_.seeds.size()) {
      const std::string& s = rule_.seeds[n - 1];
      out.append(s, 0, static_cast<std::size_t>(budget < s.size() ? budget : s.size()));
      return;
    }
    const std::uint64_t first_len = len_[n - 1 - rule_.back_a];
    emit_prefix(n - rule_.back_a, budget, out);
    if (budget > first_len) emit_prefix(n - rule_.back_b, budget - first_len, out);
  }

  std::string word(std::uint32_t n) {
    std::string out;
    const std::uint64_t len = length(n);
    out.reserve(static_cast<std::size_t>(len));
    emit_prefix(n, len, out);
    return out;
  }

 private:
  FamilyRule rule_;
  std::vector<std::uint64_t> len_;
};

}  // namespace detail

/// Seeds of the frequency-word family: w_1 = 2, w_2 = 1, w_3 = 2, and
/// w_n = w_{n-2} w_{n-1} afterwards.
inline FamilyRule canonical_rule() { return {{"2", "1", "2"}, 2, 1}; }

inline constexpr std::uint32_t word_index_cap = 40;

/// w_n of the canonical family, fully materialized. |w_n| is Fibonacci-sized,
/// hence the index cap.
inline Word build_w(std::uint32_t n) {
  if (n < 1) throw std::invalid_argument("build_w: n must be >= 1");
  if (n > word_index_cap)
    throw std::range_error("build_w: index " + std::to_string(n) + " exceeds cap " +
                           std::to_string(word_index_cap));
  detail::FamilyExpander fam(canonical_rule());
  return Word{fam.word(n)};
}

/// Level word W_h: children counts across height h in increasing label
/// order. W_0 = 2, W_1 = 12, W_h = W_{h-2} W_{h-1}.
inline Word build_level_word(std::uint32_t h) {
  if (h > word_index_cap)
    throw std::range_error("build_level_word: height " + std::to_string(h) + " exceeds cap " +
                           std::to_string(word_index_cap));
  detail::FamilyExpander fam(FamilyRule{{"2", "12"}, 2, 1});
  return Word{fam.word(h + 1)};
}

/// Sequence table sized so that the first prefix_len frequency counts are
/// complete. Slow growth puts the needed horizon near phi * prefix_len; start
/// above that and double on the rare shortfall.
inline SequenceTable table_covering_frequency_prefix(std::uint64_t prefix_len) {
  std::uint64_t horizon = 2 * prefix_len + 8;
  for (;;) {
    SequenceTable t = eval_g(horizon);
    if (t.at(horizon) - 1 >= prefix_len) return t;
    horizon *= 2;
  }
}

/// First prefix_len symbols of the frequency word W = f(1) f(2) f(3) ...
/// Requires every requested count to be complete at the table's horizon.
inline Word frequency_word(std::uint64_t prefix_len, const FrequencyTable& freq) {
  if (prefix_len < 1) throw std::invalid_argument("frequency_word: prefix length must be >= 1");
  if (freq.complete_upto() < prefix_len)
    throw std::range_error("frequency_word: counts complete only up to " +
                           std::to_string(freq.complete_upto()) + " of " +
                           std::to_string(prefix_len) +
                           " requested; rebuild the sequence table with a larger horizon");
  Word w;
  w.symbols.reserve(static_cast<std::size_t>(prefix_len));
  for (std::uint64_t m = 1; m <= prefix_len; ++m) {
    const std::uint64_t f = freq.count(m);
    if (f != 1 && f != 2)
      throw std::invalid_argument("frequency_word: f(" + std::to_string(m) + ") = " +
                                  std::to_string(f) + " leaves the alphabet {1,2}");
    w.symbols.push_back(f == 1 ? '1' : '2');
  }
  return w;
}

// Candidate factorization of an infinite word as a product of family words.
struct FactorizationSpec {
  enum class Scheme {
    squares_from_3,  // w_1 w_2 then squared factors from w_3 on
    plain_from_3,    // plain product from w_3 on
    custom,          // finite explicit factor list
  };

  FamilyRule rule;
  Scheme scheme = Scheme::squares_from_3;
  std::vector<std::uint32_t> factors;  // custom scheme only
};

inline FactorizationSpec squares_factorization() {
  return {canonical_rule(), FactorizationSpec::Scheme::squares_from_3, {}};
}

inline FactorizationSpec plain_factorization() {
  return {canonical_rule(), FactorizationSpec::Scheme::plain_from_3, {}};
}

enum class MatchOutcome {
  full_match,  // product agrees with the whole target
  mismatch,    // first divergence inside the target
  exhausted,   // custom factor list ended before the target did
};

struct MatchReport {
  MatchOutcome outcome = MatchOutcome::full_match;
  std::uint64_t matched_len = 0;  // symbols matched; for a mismatch this is its 0-based position
  std::uint64_t target_len = 0;
  char expected = 0;  // target symbol at the mismatch
  char actual = 0;    // product symbol at the mismatch

  bool full() const noexcept { return outcome == MatchOutcome::full_match; }
};

inline std::string describe(const MatchReport& r) {
  switch (r.outcome) {
    case MatchOutcome::full_match:
      return "match " + std::to_string(r.matched_len) + "/" + std::to_string(r.target_len) +
             " (full)";
    case MatchOutcome::mismatch:
      return "mismatch at position " + std::to_string(r.matched_len + 1) + ": expected '" +
             std::string(1, r.expected) + "', got '" + std::string(1, r.actual) + "' (matched " +
             std::to_string(r.matched_len) + "/" + std::to_string(r.target_len) + ")";
    case MatchOutcome::exhausted:
      return "factor list exhausted after " + std::to_string(r.matched_len) + "/" +
             std::to_string(r.target_len) + " symbols";
  }
  return "";
}

/// Expands the candidate product just far enough to cover the target and
/// compares symbol by symbol. Never claims more than the target's length.
inline MatchReport verify_factorization(const FactorizationSpec& spec, const Word& target) {
  validate_rule(spec.rule);
  const std::uint64_t want = target.size();
  std::string produced;
  produced.reserve(static_cast<std::size_t>(want));
  detail::FamilyExpander fam(spec.rule);

  auto emit = [&](std::uint32_t index) {
    if (produced.size() < want) fam.emit_prefix(index, want - produced.size(), produced);
  };
  bool ran_out = false;
  switch (spec.scheme) {
    case FactorizationSpec::Scheme::squares_from_3:
      emit(1);
      emit(2);
      for (std::uint32_t n = 3; produced.size() < want; ++n) {
        emit(n);
        emit(n);
      }
      break;
    case FactorizationSpec::Scheme::plain_from_3:
      for (std::uint32_t n = 3; produced.size() < want; ++n) emit(n);
      break;
    case FactorizationSpec::Scheme::custom:
      for (std::uint32_t n : spec.factors) {
        if (n < 1) throw std::invalid_argument("verify_factorization: factor index 0");
        emit(n);
      }
      ran_out = produced.size() < want;
      break;
  }

  MatchReport report;
  report.target_len = want;
  const std::uint64_t common = produced.size();
  for (std::uint64_t i = 0; i < common; ++i) {
    if (produced[static_cast<std::size_t>(i)] != target.symbols[static_cast<std::size_t>(i)]) {
      report.outcome = MatchOutcome::mismatch;
      report.matched_len = i;
      report.expected = target.symbols[static_cast<std::size_t>(i)];
      report.actual = produced[static_cast<std::size_t>(i)];
      return report;
    }
  }
  report.outcome = ran_out ? MatchOutcome::exhausted : MatchOutcome::full_match;
  report.matched_len = common;
  return report;
}

/// Parses the compact text form:
///   seeds=2,1,2;rule=2,1;scheme=squares-from-3
/// scheme is `squares-from-3`, `plain-from-3`, or `product:3,4,4` (explicit
/// factor indices).
inline FactorizationSpec parse_factorization_spec(std::string_view text) {
  auto fail = [](const std::string& why) {
    throw std::invalid_argument("factorization spec: " + why);
  };
  auto split = [](std::string_view s, char sep) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (pos <= s.size()) {
      const std::size_t next = s.find(sep, pos);
      if (next == std::string_view::npos) {
        parts.emplace_back(s.substr(pos));
        break;
      }
      parts.emplace_back(s.substr(pos, next - pos));
      pos = next + 1;
    }
    return parts;
  };
  auto parse_u32 = [&](const std::string& s) -> std::uint32_t {
    if (s.empty() || s.size() > 9 || s.find_first_not_of("0123456789") != std::string::npos)
      fail("expected a number, got '" + s + "'");
    return static_cast<std::uint32_t>(std::stoul(s));
  };

  FactorizationSpec spec;
  bool saw_seeds = false, saw_rule = false, saw_scheme = false;
  for (const std::string& field : split(text, ';')) {
    const std::size_t eq = field.find('=');
    if (eq == std::string::npos) fail("field '" + field + "' is not key=value");
    const std::string key = field.substr(0, eq);
    const std::string value = field.substr(eq + 1);
    if (key == "seeds") {
      spec.rule.seeds = split(value, ',');
      saw_seeds = true;
    } else if (key == "rule") {
      const auto parts = split(value, ',');
      if (parts.size() != 2) fail("rule needs exactly two back-references");
      spec.rule.back_a = parse_u32(parts[0]);
      spec.rule.back_b = parse_u32(parts[1]);
      saw_rule = true;
    } else if (key == "scheme") {
      if (value == "squares-from-3") {
        spec.scheme = FactorizationSpec::Scheme::squares_from_3;
      } else if (value == "plain-from-3") {
        spec.scheme = FactorizationSpec::Scheme::plain_from_3;
      } else if (value.starts_with("product:")) {
        spec.scheme = FactorizationSpec::Scheme::custom;
        for (const auto& part : split(value.substr(8), ','))
          spec.factors.push_back(parse_u32(part));
        if (spec.factors.empty()) fail("empty product list");
      } else {
        fail("unknown scheme '" + value + "'");
      }
      saw_scheme = true;
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  if (!saw_seeds || !saw_rule || !saw_scheme) fail("need seeds=, rule= and scheme= fields");
  validate_rule(spec.rule);
  for (std::uint32_t n : spec.factors)
    if (n < 1) fail("factor indices start at 1");
  return spec;
}

}  // namespace gseq
