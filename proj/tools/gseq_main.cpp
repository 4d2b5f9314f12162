// gseq: Hofstadter G-sequence toolkit.
//
// Computes G(n) = n - G(G(n-1)) by four independent engines (memoized
// recursion, Zeckendorf shift, exact golden-ratio floor, tree parents),
// exposes the frequency word and its factorizations, renders the labelled
// tree, and explores the k-fold generalizations.
//
// Exit codes: 0 success, 1 verification/property failure, 2 usage error.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gseq/gseq.hpp"

namespace {

enum class Method { recursion, zeck, floor, tree, all };
enum class Format { table, csv, bfile, ascii, dot };

const std::map<std::string, Method> kMethodNames = {{"recursion", Method::recursion},
                                                    {"zeck", Method::zeck},
                                                    {"floor", Method::floor},
                                                    {"tree", Method::tree},
                                                    {"all", Method::all}};

struct Output {
  std::string path;  // empty = stdout
  std::ofstream file;

  std::ostream& open() {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open output file: " + path);
    return file;
  }
};

std::size_t digits(std::uint64_t v) { return std::to_string(v).size(); }

// --- sequence writers ------------------------------------------------------

void write_pairs(std::ostream& out, Format format, const char* csv_header,
                 const std::vector<std::uint64_t>& values, std::uint64_t first_n) {
  const std::uint64_t last_n = first_n + values.size() - 1;
  switch (format) {
    case Format::table: {
      std::uint64_t max_v = 0;
      for (std::uint64_t v : values) max_v = v > max_v ? v : max_v;
      const int wn = static_cast<int>(digits(last_n));
      const int wv = static_cast<int>(digits(max_v));
      for (std::size_t i = 0; i < values.size(); ++i)
        out << std::setw(wn) << (first_n + i) << "  " << std::setw(wv) << values[i] << "\n";
      break;
    }
    case Format::csv:
      out << csv_header << "\n";
      for (std::size_t i = 0; i < values.size(); ++i)
        out << (first_n + i) << "," << values[i] << "\n";
      break;
    case Format::bfile:
      for (std::size_t i = 0; i < values.size(); ++i)
        out << (first_n + i) << " " << values[i] << "\n";
      break;
    default:
      throw CLI::ValidationError("format", "format not supported for this command");
  }
}

void write_columns(std::ostream& out, Format format, const std::vector<std::string>& names,
                   const std::vector<std::vector<std::uint64_t>>& columns) {
  const std::size_t rows = columns.front().size();
  if (format == Format::csv) {
    out << "n";
    for (const auto& name : names) out << "," << name;
    out << "\n";
    for (std::size_t i = 0; i < rows; ++i) {
      out << (i + 1);
      for (const auto& col : columns) out << "," << col[i];
      out << "\n";
    }
    return;
  }
  if (format != Format::table)
    throw CLI::ValidationError("format", "method=all supports table or csv output");
  std::vector<int> widths;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    std::uint64_t max_v = 0;
    for (std::uint64_t v : columns[c]) max_v = v > max_v ? v : max_v;
    widths.push_back(static_cast<int>(std::max(digits(max_v), names[c].size())));
  }
  const int wn = static_cast<int>(digits(rows));
  out << std::setw(wn) << "n";
  for (std::size_t c = 0; c < columns.size(); ++c)
    out << "  " << std::setw(widths[c]) << names[c];
  out << "\n";
  for (std::size_t i = 0; i < rows; ++i) {
    out << std::setw(wn) << (i + 1);
    for (std::size_t c = 0; c < columns.size(); ++c)
      out << "  " << std::setw(widths[c]) << columns[c][i];
    out << "\n";
  }
}

std::vector<std::uint64_t> compute_method(Method m, std::uint64_t horizon) {
  std::vector<std::uint64_t> v;
  v.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(horizon, 1u << 20)));
  switch (m) {
    case Method::recursion: {
      const gseq::SequenceTable t = gseq::eval_g(horizon);
      v.assign(t.terms().begin(), t.terms().end());
      break;
    }
    case Method::zeck:
      for (std::uint64_t n = 1; n <= horizon; ++n) v.push_back(gseq::g_zeck(n));
      break;
    case Method::floor:
      for (std::uint64_t n = 1; n <= horizon; ++n) v.push_back(gseq::g_floor(n));
      break;
    case Method::tree:
      for (std::uint64_t n = 1; n <= horizon; ++n) v.push_back(gseq::parent_label(n + 1));
      break;
    case Method::all:
      throw std::logic_error("compute_method(all)");
  }
  return v;
}

// --- commands ---------------------------------------------------------------

int cmd_seq(std::uint64_t horizon, Method method, Format format, Output& output) {
  if (method == Method::all) {
    const std::vector<std::string> names = {"recursion", "zeck", "floor", "tree"};
    std::vector<std::vector<std::uint64_t>> cols;
    for (Method m : {Method::recursion, Method::zeck, Method::floor, Method::tree})
      cols.push_back(compute_method(m, horizon));
    for (std::uint64_t n = 1; n <= horizon; ++n) {
      const std::uint64_t want = cols[0][static_cast<std::size_t>(n - 1)];
      for (std::size_t c = 1; c < cols.size(); ++c) {
        if (cols[c][static_cast<std::size_t>(n - 1)] != want) {
          std::cerr << "methods disagree at n=" << n;
          for (std::size_t i = 0; i < cols.size(); ++i)
            std::cerr << " " << names[i] << "=" << cols[i][static_cast<std::size_t>(n - 1)];
          std::cerr << "\n";
          return 1;
        }
      }
    }
    write_columns(output.open(), format, names, cols);
    return 0;
  }
  write_pairs(output.open(), format, "n,g", compute_method(method, horizon), 1);
  return 0;
}

int cmd_freq(std::uint64_t length, std::optional<std::uint64_t> horizon, Format format,
             Output& output) {
  gseq::SequenceTable table =
      horizon ? gseq::eval_g(*horizon) : gseq::table_covering_frequency_prefix(length);
  const gseq::FrequencyTable freq = gseq::frequency(table);
  std::uint64_t emit = length;
  if (freq.complete_upto() < length) {
    emit = freq.complete_upto();
    std::cerr << "warning: horizon " << table.horizon() << " completes only " << emit << " of "
              << length << " requested counts\n";
  }
  std::vector<std::uint64_t> counts;
  counts.reserve(static_cast<std::size_t>(emit));
  for (std::uint64_t m = 1; m <= emit; ++m) counts.push_back(freq.count(m));
  write_pairs(output.open(), format, "n,f", counts, 1);
  return 0;
}

int cmd_tree(std::uint32_t height, Format format, Output& output) {
  if (format == Format::ascii) {
    output.open() << gseq::render_ascii(gseq::build_explicit(height));
    return 0;
  }
  if (format == Format::dot) {
    output.open() << gseq::to_dot(gseq::build_explicit(height));
    return 0;
  }
  throw CLI::ValidationError("format", "tree supports ascii or dot output");
}

void write_word(std::ostream& out, const gseq::Word& w, Format format) {
  if (format == Format::csv) {
    for (std::size_t i = 0; i < w.symbols.size(); ++i) {
      if (i > 0) out << ",";
      out << w.symbols[i];
    }
    out << "\n";
    return;
  }
  if (format != Format::table)
    throw CLI::ValidationError("format", "word supports table or csv output");
  out << w.symbols << "\n";
}

int cmd_word(std::optional<std::uint32_t> wn, std::optional<std::uint32_t> level,
             std::optional<std::uint64_t> freq_len, std::optional<std::string> check_spec,
             std::uint64_t prefix_len, Format format, Output& output) {
  const int modes = int(wn.has_value()) + int(level.has_value()) + int(freq_len.has_value()) +
                    int(check_spec.has_value());
  if (modes != 1)
    throw CLI::ValidationError("word", "choose exactly one of --wn, --level, --freq, --check");
  if (wn) {
    write_word(output.open(), gseq::build_w(*wn), format);
    return 0;
  }
  if (level) {
    write_word(output.open(), gseq::build_level_word(*level), format);
    return 0;
  }
  if (freq_len) {
    const gseq::SequenceTable t = gseq::table_covering_frequency_prefix(*freq_len);
    write_word(output.open(), gseq::frequency_word(*freq_len, gseq::frequency(t)), format);
    return 0;
  }
  const gseq::FactorizationSpec spec = gseq::parse_factorization_spec(*check_spec);
  const gseq::SequenceTable t = gseq::table_covering_frequency_prefix(prefix_len);
  const gseq::Word target = gseq::frequency_word(prefix_len, gseq::frequency(t));
  const gseq::MatchReport report = gseq::verify_factorization(spec, target);
  output.open() << gseq::describe(report) << "\n";
  return report.outcome == gseq::MatchOutcome::mismatch ? 1 : 0;
}

int cmd_verify(const gseq::VerifyConfig& cfg, const std::set<std::string>& only) {
  const auto results = gseq::run_verify(cfg, only);
  bool all_pass = true;
  for (const auto& r : results) {
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << " (" << r.params << ")";
    if (!r.pass) std::cout << ": " << r.detail;
    std::cout << "\n";
    all_pass = all_pass && r.pass;
  }
  return all_pass ? 0 : 1;
}

int cmd_kfold(std::uint64_t k, std::uint64_t horizon, bool strict,
              std::optional<std::string> spec_text, Format format, Output& output) {
  const gseq::KFoldRun run = gseq::try_eval_kfold({.k = k, .horizon = horizon});
  bool anomaly = false;

  std::cerr << "# kfold k=" << k << " n=" << horizon << "\n";
  if (run.failure) {
    anomaly = true;
    std::cerr << "# well-defined: no: " << run.failure->message << "\n";
  } else {
    std::cerr << "# well-defined: yes\n";
  }

  const gseq::SlowReport slow = gseq::is_slow(run.table);
  if (slow.slow) {
    std::cerr << "# slow-growing: yes\n";
  } else {
    anomaly = true;
    std::cerr << "# slow-growing: no (first violation at n=" << slow.first_violation << ")\n";
  }

  const gseq::FrequencyTable freq = gseq::frequency(run.table);
  bool alphabet_ok = true;
  std::uint64_t bad_m = 0;
  for (std::uint64_t m = 1; m <= freq.complete_upto(); ++m) {
    if (freq.count(m) != 1 && freq.count(m) != 2) {
      alphabet_ok = false;
      bad_m = m;
      break;
    }
  }
  if (alphabet_ok) {
    std::cerr << "# frequency alphabet {1,2}: yes (complete through m=" << freq.complete_upto()
              << ")\n";
  } else {
    anomaly = true;
    std::cerr << "# frequency alphabet {1,2}: no (f(" << bad_m << ")=" << freq.count(bad_m)
              << ")\n";
  }

  if (spec_text) {
    const gseq::FactorizationSpec spec = gseq::parse_factorization_spec(*spec_text);
    if (alphabet_ok && freq.complete_upto() >= 1) {
      const gseq::Word target = gseq::frequency_word(freq.complete_upto(), freq);
      const gseq::MatchReport report = gseq::verify_factorization(spec, target);
      if (!report.full()) anomaly = true;
      std::cerr << "# factorization: " << gseq::describe(report) << "\n";
    } else {
      anomaly = true;
      std::cerr << "# factorization: skipped (no usable frequency word)\n";
    }
  }

  std::vector<std::uint64_t> values(run.table.terms().begin(), run.table.terms().end());
  write_pairs(output.open(), format, "n,g", values, 1);
  return strict && anomaly ? 1 : 0;
}

int cmd_bench(std::uint64_t horizon, unsigned trials, Format format, Output& output) {
  using clock = std::chrono::steady_clock;
  std::vector<std::pair<std::string, std::uint64_t>> rows;
  std::uint64_t sink = 0;
  for (Method m : {Method::recursion, Method::zeck, Method::floor, Method::tree}) {
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    for (unsigned trial = 0; trial < trials; ++trial) {
      const auto start = clock::now();
      const auto values = compute_method(m, horizon);
      const auto stop = clock::now();
      sink += values.back();
      const auto nanos =
          std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count();
      best = std::min<std::uint64_t>(best, static_cast<std::uint64_t>(nanos));
    }
    std::string name;
    for (const auto& [key, method] : kMethodNames)
      if (method == m) name = key;
    rows.emplace_back(name, best);
  }
  if (sink == 0xdeadbeef) std::cerr << "";  // keep the computations alive

  std::ostream& out = output.open();
  if (format == Format::csv) {
    out << "method,n,nanos\n";
    for (const auto& [name, nanos] : rows) out << name << "," << horizon << "," << nanos << "\n";
    return 0;
  }
  if (format != Format::table)
    throw CLI::ValidationError("format", "bench supports table or csv output");
  for (const auto& [name, nanos] : rows)
    out << std::setw(9) << std::left << name << std::right << " n=" << horizon << " " << nanos
        << " ns\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hofstadter G-sequence toolkit: four engines for G(n) = n - G(G(n-1)),\n"
               "the labelled tree behind it, frequency words, and k-fold exploration"};
  app.require_subcommand(1);

  const std::map<std::string, Format> seq_formats = {
      {"table", Format::table}, {"csv", Format::csv}, {"bfile", Format::bfile}};
  const std::map<std::string, Format> tree_formats = {{"ascii", Format::ascii},
                                                      {"dot", Format::dot}};
  const std::map<std::string, Format> flat_formats = {{"table", Format::table},
                                                      {"csv", Format::csv}};

  // seq
  auto* seq = app.add_subcommand("seq", "Emit G(1..N)");
  std::uint64_t seq_n = 10000;
  Method seq_method = Method::recursion;
  Format seq_format = Format::table;
  Output seq_out;
  seq->add_option("-n,--horizon", seq_n, "Horizon N")->check(CLI::PositiveNumber);
  seq->add_option("--method", seq_method, "Evaluation method")
      ->transform(CLI::CheckedTransformer(kMethodNames));
  seq->add_option("--format", seq_format, "Output format")
      ->transform(CLI::CheckedTransformer(seq_formats));
  seq->add_option("--out", seq_out.path, "Write to file instead of stdout");

  // freq
  auto* freq = app.add_subcommand("freq", "Emit the frequency sequence f(1..N)");
  std::uint64_t freq_n = 10000;
  std::optional<std::uint64_t> freq_horizon;
  Format freq_format = Format::table;
  Output freq_out;
  freq->add_option("-n,--length", freq_n, "How many counts to emit")->check(CLI::PositiveNumber);
  freq->add_option("--horizon", freq_horizon,
                   "Underlying sequence horizon (default: sized automatically)")
      ->check(CLI::PositiveNumber);
  freq->add_option("--format", freq_format, "Output format")
      ->transform(CLI::CheckedTransformer(seq_formats));
  freq->add_option("--out", freq_out.path, "Write to file instead of stdout");

  // tree
  auto* tree = app.add_subcommand("tree", "Render the labelled tree");
  tree->set_help_flag("--help", "Print this help message and exit");
  std::uint32_t tree_height = 4;
  Format tree_format = Format::ascii;
  Output tree_out;
  tree->add_option("-h,--height", tree_height, "Materialization height");
  tree->add_option("--format", tree_format, "ascii (height <= 8) or dot (height <= 25)")
      ->transform(CLI::CheckedTransformer(tree_formats));
  tree->add_option("--out", tree_out.path, "Write to file instead of stdout");

  // word
  auto* word = app.add_subcommand("word", "Morphic words and factorization checks");
  std::optional<std::uint32_t> word_wn;
  std::optional<std::uint32_t> word_level;
  std::optional<std::uint64_t> word_freq;
  std::optional<std::string> word_check;
  std::uint64_t word_prefix = 10000;
  Format word_format = Format::table;
  Output word_out;
  word->add_option("--wn", word_wn, "Emit w_n (w1=2, w2=1, w3=2, w_n = w_{n-2} w_{n-1})");
  word->add_option("--level", word_level, "Emit the level word W_h");
  word->add_option("--freq", word_freq, "Emit the first L symbols of the frequency word");
  word->add_option("--check", word_check,
                   "Verify a factorization spec against the frequency word; spec grammar:\n"
                   "seeds=2,1,2;rule=2,1;scheme=squares-from-3\n"
                   "  seeds:  comma-separated words over {1,2}\n"
                   "  rule:   back-references a,b meaning w_n = w_{n-a} w_{n-b}\n"
                   "  scheme: squares-from-3 | plain-from-3 | product:i,j,k,...");
  word->add_option("--prefix-len", word_prefix, "Target prefix length for --check")
      ->check(CLI::PositiveNumber);
  word->add_option("--format", word_format, "Output format")
      ->transform(CLI::CheckedTransformer(flat_formats));
  word->add_option("--out", word_out.path, "Write to file instead of stdout");

  // verify
  auto* verify = app.add_subcommand("verify", "Run the cross-engine property suite");
  gseq::VerifyConfig vcfg;
  std::map<std::string, bool> selected;
  verify->add_option("-n,--horizon", vcfg.horizon, "Horizon for sequence-wide properties")
      ->check(CLI::PositiveNumber);
  verify->add_option("--tree-height", vcfg.explicit_height,
                     "Explicit-tree height for structural checks");
  verify->add_option("--prefix-len", vcfg.word_prefix, "Frequency-word prefix length")
      ->check(CLI::PositiveNumber);
  for (const std::string& name : gseq::verify_property_names()) {
    selected[name] = false;
    verify->add_flag("--" + name, selected[name], "Run only selected properties: " + name);
  }

  // kfold
  auto* kfold = app.add_subcommand("kfold", "Explore G(n) = n - G(G^k(n-1))");
  std::uint64_t kfold_k = 1;
  std::uint64_t kfold_n = 10000;
  bool kfold_strict = false;
  std::optional<std::string> kfold_spec;
  Format kfold_format = Format::table;
  Output kfold_out;
  kfold->add_option("-k,--fold", kfold_k, "Fold depth k")->check(CLI::PositiveNumber);
  kfold->add_option("-n,--horizon", kfold_n, "Horizon N")->check(CLI::PositiveNumber);
  kfold->add_flag("--strict", kfold_strict, "Exit nonzero on any anomaly");
  kfold->add_option("--spec", kfold_spec, "Factorization spec to check (see `word --check`)");
  kfold->add_option("--format", kfold_format, "Output format")
      ->transform(CLI::CheckedTransformer(seq_formats));
  kfold->add_option("--out", kfold_out.path, "Write to file instead of stdout");

  // bench
  auto* bench = app.add_subcommand("bench", "Time the four methods");
  std::uint64_t bench_n = 1000000;
  unsigned bench_trials = 1;
  Format bench_format = Format::table;
  Output bench_out;
  bench->add_option("-n,--horizon", bench_n, "Horizon N")->check(CLI::PositiveNumber);
  bench->add_option("--trials", bench_trials, "Trials per method (best is reported)")
      ->check(CLI::PositiveNumber);
  bench->add_option("--format", bench_format, "Output format")
      ->transform(CLI::CheckedTransformer(flat_formats));
  bench->add_option("--out", bench_out.path, "Write to file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*seq) return cmd_seq(seq_n, seq_method, seq_format, seq_out);
    if (*freq) return cmd_freq(freq_n, freq_horizon, freq_format, freq_out);
    if (*tree) return cmd_tree(tree_height, tree_format, tree_out);
    if (*word)
      return cmd_word(word_wn, word_level, word_freq, word_check, word_prefix, word_format,
                      word_out);
    if (*verify) {
      std::set<std::string> only;
      for (const auto& [name, on] : selected)
        if (on) only.insert(name);
      return cmd_verify(vcfg, only);
    }
    if (*kfold)
      return cmd_kfold(kfold_k, kfold_n, kfold_strict, kfold_spec, kfold_format, kfold_out);
    if (*bench) return cmd_bench(bench_n, bench_trials, bench_format, bench_out);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
