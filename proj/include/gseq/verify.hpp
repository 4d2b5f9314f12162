#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "gseq/fibzeck.hpp"
#include "gseq/recurrence.hpp"
#include "gseq/tree.hpp"
#include "gseq/words.hpp"

// Executable form of the properties the engines must satisfy, shared by the
// `verify` command and the test suites. Each check returns the first
// counterexample it finds so a failure is actionable.

namespace gseq {

struct PropertyResult {
  std::string name;
  std::string params;
  bool pass = true;
  std::string detail;
};

struct VerifyConfig {
  std::uint64_t horizon = 100000;         // cross-method, parent rule, slow growth
  std::uint64_t tree_method_cap = 100000; // tree-method part of the cross check
  std::uint64_t codec_horizon = 100000;
  std::uint32_t explicit_height = 15;     // explicit-tree structural checks
  std::uint64_t word_prefix = 100000;     // factorization prefix length
  std::uint32_t formula_height = 85;      // level formulas under checked arithmetic
  std::uint32_t fib_parent_max = 90;
};

/// recursion, Zeckendorf shift, golden-ratio floor and tree parents agree
/// pointwise on 1..horizon (tree capped separately).
inline PropertyResult check_methods(const SequenceTable& g, std::uint64_t tree_cap) {
  PropertyResult r{"methods", "n<=" + std::to_string(g.horizon()) +
                                  ", tree n<=" + std::to_string(tree_cap),
                   true, ""};
  for (std::uint64_t n = 1; n <= g.horizon(); ++n) {
    const std::uint64_t want = g.at(n);
    const std::uint64_t zk = g_zeck(n);
    const std::uint64_t fl = g_floor(n);
    if (zk != want || fl != want) {
      r.pass = false;
      r.detail = "n=" + std::to_string(n) + ": recursion=" + std::to_string(want) +
                 " zeck=" + std::to_string(zk) + " floor=" + std::to_string(fl);
      return r;
    }
    if (n <= tree_cap) {
      const std::uint64_t tr = parent_label(n + 1);
      if (tr != want) {
        r.pass = false;
        r.detail = "n=" + std::to_string(n) + ": recursion=" + std::to_string(want) +
                   " tree=" + std::to_string(tr);
        return r;
      }
    }
  }
  return r;
}

/// The tree realizes the recursion: parent_label(n+1) = G(n).
inline PropertyResult check_parent_rule(const SequenceTable& g) {
  PropertyResult r{"parent-rule", "n<=" + std::to_string(g.horizon()), true, ""};
  for (std::uint64_t n = 1; n <= g.horizon(); ++n) {
    const std::uint64_t got = parent_label(n + 1);
    if (got != g.at(n)) {
      r.pass = false;
      r.detail = "n=" + std::to_string(n) + ": parent_label(n+1)=" + std::to_string(got) +
                 " but G(n)=" + std::to_string(g.at(n));
      return r;
    }
  }
  return r;
}

/// G(F_n) = F_{n-1}: the parent of vertex F_n + 1 is labeled F_{n-1}.
/// Pure coordinate arithmetic, no table.
inline PropertyResult check_fib_parents(std::uint32_t max_index) {
  PropertyResult r{"fib-parents", "2<=n<=" + std::to_string(max_index), true, ""};
  for (std::uint32_t n = 2; n <= max_index; ++n) {
    const std::uint64_t got = parent_label(fib(n) + 1);
    if (got != fib(n - 1)) {
      r.pass = false;
      r.detail = "n=" + std::to_string(n) + ": parent_label(F_n+1)=" + std::to_string(got) +
                 " but F_{n-1}=" + std::to_string(fib(n - 1));
      return r;
    }
  }
  return r;
}

/// The frequency word factors as w1 w2 (w3 w4 ...)^2 and also as the plain
/// product w3 w4 w5 ...
inline PropertyResult check_word_product(std::uint64_t prefix_len) {
  PropertyResult r{"word-product", "prefix<=" + std::to_string(prefix_len), true, ""};
  const SequenceTable table = table_covering_frequency_prefix(prefix_len);
  const Word target = frequency_word(prefix_len, frequency(table));
  const MatchReport squares = verify_factorization(squares_factorization(), target);
  if (!squares.full()) {
    r.pass = false;
    r.detail = "squares product: " + describe(squares);
    return r;
  }
  const MatchReport plain = verify_factorization(plain_factorization(), target);
  if (!plain.full()) {
    r.pass = false;
    r.detail = "plain product: " + describe(plain);
    return r;
  }
  return r;
}

/// Level sizes: F_{h+2} per level in the materialized tree, with the running
/// sum matching the closed cumulative form F_{h+4} - 2 as far as checked
/// 64-bit arithmetic reaches.
inline PropertyResult check_levels(std::uint32_t explicit_height, std::uint32_t formula_height) {
  PropertyResult r{"levels", "explicit h<=" + std::to_string(explicit_height) +
                                 ", formula h<=" + std::to_string(formula_height),
                   true, ""};
  const ExplicitTree tree = build_explicit(explicit_height);
  std::uint64_t running = 0;
  for (std::uint32_t h = 0; h <= explicit_height; ++h) {
    running += tree.level(h).size();
    if (tree.level(h).size() != level_size(h) || running != cumulative_size(h)) {
      r.pass = false;
      r.detail = "h=" + std::to_string(h) + ": explicit level " +
                 std::to_string(tree.level(h).size()) + " vs F_{h+2}=" +
                 std::to_string(level_size(h)) + ", cumulative " + std::to_string(running) +
                 " vs " + std::to_string(cumulative_size(h));
      return r;
    }
  }
  running = 0;
  for (std::uint32_t h = 0; h <= formula_height; ++h) {
    running = detail::checked_add(running, level_size(h), "check_levels");
    if (running != cumulative_size(h)) {
      r.pass = false;
      r.detail = "h=" + std::to_string(h) + ": sum of level sizes " + std::to_string(running) +
                 " vs F_{h+4}-2=" + std::to_string(cumulative_size(h));
      return r;
    }
  }
  return r;
}

/// Zeckendorf round trip is the identity and every encoding honors the
/// r_i >= r_{i+1} + 2 gap condition.
inline PropertyResult check_codec(std::uint64_t horizon) {
  PropertyResult r{"codec", "n<=" + std::to_string(horizon), true, ""};
  for (std::uint64_t n = 0; n <= horizon; ++n) {
    const Zeck z = zeck_encode(n);
    if (!zeck_valid(z)) {
      r.pass = false;
      r.detail = "n=" + std::to_string(n) + ": encoding violates the gap condition";
      return r;
    }
    if (zeck_decode(z) != n) {
      r.pass = false;
      r.detail = "n=" + std::to_string(n) + ": decode(encode(n))=" + std::to_string(zeck_decode(z));
      return r;
    }
  }
  return r;
}

/// Slow growth (differences in {0,1}) plus the {1,2} frequency alphabet on
/// the complete counts.
inline PropertyResult check_slow_alphabet(const SequenceTable& g) {
  PropertyResult r{"slow", "n<=" + std::to_string(g.horizon()), true, ""};
  const SlowReport slow = is_slow(g);
  if (!slow.slow) {
    r.pass = false;
    r.detail = "difference outside {0,1} at n=" + std::to_string(slow.first_violation);
    return r;
  }
  const FrequencyTable freq = frequency(g);
  for (std::uint64_t m = 1; m <= freq.complete_upto(); ++m) {
    if (freq.count(m) != 1 && freq.count(m) != 2) {
      r.pass = false;
      r.detail = "f(" + std::to_string(m) + ")=" + std::to_string(freq.count(m));
      return r;
    }
  }
  return r;
}

/// The materialized tree and the coordinate algebra agree vertex by vertex:
/// parents, children counts, and parent monotonicity within levels.
inline PropertyResult check_adjacency(std::uint32_t explicit_height) {
  PropertyResult r{"adjacency", "explicit h<=" + std::to_string(explicit_height), true, ""};
  const ExplicitTree tree = build_explicit(explicit_height);
  for (std::uint64_t label = 2; label <= tree.vertex_count(); ++label) {
    if (tree.parent_of(label) != parent_label(label)) {
      r.pass = false;
      r.detail = "label=" + std::to_string(label) + ": explicit parent " +
                 std::to_string(tree.parent_of(label)) + " vs coordinate parent " +
                 std::to_string(parent_label(label));
      return r;
    }
  }
  for (std::uint32_t h = 0; h + 1 <= explicit_height; ++h) {
    std::uint64_t prev_parent = 0;
    for (std::uint64_t label : tree.level(h)) {
      if (static_cast<int>(tree.children_of(label).size()) != children_count(label)) {
        r.pass = false;
        r.detail = "label=" + std::to_string(label) + ": explicit children " +
                   std::to_string(tree.children_of(label).size()) + " vs coordinate count " +
                   std::to_string(children_count(label));
        return r;
      }
      if (h > 0) {
        const std::uint64_t p = tree.parent_of(label);
        if (p < prev_parent) {
          r.pass = false;
          r.detail = "label=" + std::to_string(label) + ": parent " + std::to_string(p) +
                     " breaks monotonicity after " + std::to_string(prev_parent);
          return r;
        }
        prev_parent = p;
      }
    }
  }
  return r;
}

/// Runs every property (or the named subset) with shared tables.
inline std::vector<PropertyResult> run_verify(const VerifyConfig& cfg,
                                              const std::set<std::string>& only = {}) {
  auto wanted = [&](const std::string& name) { return only.empty() || only.contains(name); };
  std::vector<PropertyResult> results;

  const bool needs_table = wanted("methods") || wanted("parent-rule") || wanted("slow");
  SequenceTable g = needs_table ? eval_g(cfg.horizon) : eval_g(1);

  if (wanted("methods"))
    results.push_back(check_methods(g, std::min(cfg.tree_method_cap, cfg.horizon)));
  if (wanted("parent-rule")) results.push_back(check_parent_rule(g));
  if (wanted("fib-parents")) results.push_back(check_fib_parents(cfg.fib_parent_max));
  if (wanted("word-product")) results.push_back(check_word_product(cfg.word_prefix));
  if (wanted("levels")) results.push_back(check_levels(cfg.explicit_height, cfg.formula_height));
  if (wanted("codec")) results.push_back(check_codec(cfg.codec_horizon));
  if (wanted("slow")) results.push_back(check_slow_alphabet(g));
  if (wanted("adjacency")) results.push_back(check_adjacency(cfg.explicit_height));
  return results;
}

inline const std::set<std::string>& verify_property_names() {
  static const std::set<std::string> names = {"methods", "parent-rule", "fib-parents",
                                              "word-product", "levels", "codec",
                                              "slow", "adjacency"};
  return names;
}

}  // namespace gseq
