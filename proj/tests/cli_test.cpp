// End-to-end checks of the gseq binary. The test runner passes the binary
// path as --gseq-bin=<path>; everything else goes to doctest.

#define DOCTEST_CONFIG_IMPLEMENT
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

namespace {

std::string g_gseq_bin;

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::string& args) {
  static int counter = 0;
  const std::string err_path =
      "/tmp/gseq_cli_" + std::to_string(getpid()) + "_" + std::to_string(counter++) + ".err";
  const std::string cmd = g_gseq_bin + " " + args + " 2>" + err_path;
  CliResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) result.out.append(buf, got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream err_file(err_path);
  std::stringstream err_text;
  err_text << err_file.rdbuf();
  result.err = err_text.str();
  std::remove(err_path.c_str());
  return result;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) {
      lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return lines;
}

// Last whitespace-separated token of each line, as numbers.
std::vector<std::uint64_t> value_column(const std::string& text) {
  std::vector<std::uint64_t> values;
  for (const std::string& line : lines_of(text)) {
    const std::size_t end = line.find_last_not_of(' ');
    if (end == std::string::npos) continue;
    std::size_t start = line.find_last_of(' ', end);
    start = start == std::string::npos ? 0 : start + 1;
    values.push_back(std::stoull(line.substr(start, end - start + 1)));
  }
  return values;
}

const std::vector<std::uint64_t> kTable1 = {1, 1, 2, 3, 3,  4,  4,  5,  6,  6,
                                            7, 8, 8, 9, 9, 10, 11, 11, 12, 12};
const std::vector<std::uint64_t> kTable2 = {2, 1, 2, 2, 1, 2, 1, 2, 2, 1,
                                            2, 2, 1, 2, 1, 2, 2, 1, 2, 1};

}  // namespace

TEST_CASE("seq -n 20 emits the pinned first 20 values") {
  const CliResult r = run_cli("seq -n 20");
  REQUIRE(r.exit_code == 0);
  CHECK(value_column(r.out) == kTable1);
}

TEST_CASE("seq bfile format is exactly `n value` per line") {
  const CliResult one = run_cli("seq -n 1 --format bfile");
  REQUIRE(one.exit_code == 0);
  CHECK(one.out == "1 1\n");

  std::string expected;
  for (std::size_t i = 0; i < kTable1.size(); ++i)
    expected += std::to_string(i + 1) + " " + std::to_string(kTable1[i]) + "\n";
  const CliResult r = run_cli("seq -n 20 --format bfile");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out == expected);
}

TEST_CASE("seq csv format carries a header") {
  const CliResult r = run_cli("seq -n 3 --format csv");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out == "n,g\n1,1\n2,1\n3,2\n");
}

TEST_CASE("every method produces the same bfile output") {
  const CliResult base = run_cli("seq -n 500 --format bfile --method recursion");
  REQUIRE(base.exit_code == 0);
  for (const std::string method : {"zeck", "floor", "tree"}) {
    const CliResult r = run_cli("seq -n 500 --format bfile --method " + method);
    REQUIRE(r.exit_code == 0);
    CHECK(r.out == base.out);
  }
}

TEST_CASE("seq --method all verifies agreement and emits four columns") {
  const CliResult r = run_cli("seq -n 200 --method all --format csv");
  REQUIRE(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 201);
  CHECK(lines[0] == "n,recursion,zeck,floor,tree");
  CHECK(lines[1] == "1,1,1,1,1");
  CHECK(lines[20] == "20,12,12,12,12");
}

TEST_CASE("seq is deterministic across runs") {
  const CliResult a = run_cli("seq -n 100");
  const CliResult b = run_cli("seq -n 100");
  CHECK(a.out == b.out);
}

TEST_CASE("seq --method all agrees at 10^5") {
  const CliResult r = run_cli("seq -n 100000 --method all --format csv");
  REQUIRE(r.exit_code == 0);
  CHECK(lines_of(r.out).size() == 100001);
}

TEST_CASE("freq emits the first 20 frequency counts") {
  const CliResult r = run_cli("freq -n 20 --format bfile");
  REQUIRE(r.exit_code == 0);
  CHECK(value_column(r.out) == kTable2);

  const CliResult one = run_cli("freq -n 1 --format bfile");
  REQUIRE(one.exit_code == 0);
  CHECK(one.out == "1 2\n");
}

TEST_CASE("freq -n 50 sizes its own horizon; the first 20 counts still pin") {
  const CliResult r = run_cli("freq -n 50 --format bfile");
  REQUIRE(r.exit_code == 0);
  const auto values = value_column(r.out);
  REQUIRE(values.size() == 50);
  for (std::size_t i = 0; i < kTable2.size(); ++i) CHECK(values[i] == kTable2[i]);
}

TEST_CASE("freq warns when an explicit horizon cannot complete the request") {
  const CliResult r = run_cli("freq -n 50 --horizon 20 --format bfile");
  REQUIRE(r.exit_code == 0);
  CHECK(value_column(r.out).size() == 11);  // complete_upto at horizon 20
  CHECK(r.err.find("warning") != std::string::npos);
}

TEST_CASE("freq stays on the {1,2} alphabet at 10^4") {
  const CliResult r = run_cli("freq -n 10000 --format bfile");
  REQUIRE(r.exit_code == 0);
  for (std::uint64_t v : value_column(r.out)) CHECK((v == 1 || v == 2));
}

TEST_CASE("tree renders a single root at height 0") {
  const CliResult r = run_cli("tree -h 0");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out == "1\n");
}

TEST_CASE("tree ascii at height 4 carries all 19 labels") {
  const CliResult r = run_cli("tree -h 4");
  REQUIRE(r.exit_code == 0);
  for (int label = 1; label <= 19; ++label)
    CHECK(r.out.find(std::to_string(label)) != std::string::npos);
}

TEST_CASE("tree dot export at height 10 has 374 edges") {
  const CliResult r = run_cli("tree -h 10 --format dot");
  REQUIRE(r.exit_code == 0);
  std::size_t edges = 0;
  for (const std::string& line : lines_of(r.out))
    if (line.find(" -> ") != std::string::npos) ++edges;
  CHECK(edges == 374);
}

TEST_CASE("tree rejects out-of-cap heights as usage errors") {
  CHECK(run_cli("tree -h 9").exit_code == 2);                 // ascii cap is 8
  CHECK(run_cli("tree -h 26 --format dot").exit_code == 2);   // build cap is 25
}

TEST_CASE("word emits the small words") {
  CHECK(run_cli("word --wn 5").out == "212\n");
  CHECK(run_cli("word --level 3").out == "12212\n");
  CHECK(run_cli("word --freq 20").out == "21221212212212122121\n");
  CHECK(run_cli("word --wn 4 --format csv").out == "1,2\n");
}

TEST_CASE("word --check accepts the squares factorization") {
  const CliResult r =
      run_cli("word --check 'seeds=2,1,2;rule=2,1;scheme=squares-from-3' --prefix-len 2000");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out == "match 2000/2000 (full)\n");
}

TEST_CASE("word --check flags the reversed rule with the divergence point") {
  const CliResult r =
      run_cli("word --check 'seeds=2,1,2;rule=1,2;scheme=squares-from-3' --prefix-len 2000");
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("mismatch at position 5") != std::string::npos);
}

TEST_CASE("word --check reports a too-short product without failing") {
  const CliResult r =
      run_cli("word --check 'seeds=2,1,2;rule=2,1;scheme=product:3,4' --prefix-len 100");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("exhausted") != std::string::npos);
}

TEST_CASE("word demands exactly one mode") {
  CHECK(run_cli("word").exit_code == 2);
  CHECK(run_cli("word --wn 3 --level 2").exit_code == 2);
}

TEST_CASE("verify runs the full suite and reports PASS per property") {
  const CliResult r = run_cli("verify -n 500 --tree-height 8 --prefix-len 500");
  REQUIRE(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  CHECK(lines.size() == 8);
  for (const std::string& line : lines) CHECK(line.rfind("PASS ", 0) == 0);
}

TEST_CASE("verify honors property selection") {
  const CliResult r = run_cli("verify --codec -n 200");
  REQUIRE(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 1);
  CHECK(lines[0].rfind("PASS codec", 0) == 0);

  const CliResult window = run_cli("verify --parent-rule -n 19");
  REQUIRE(window.exit_code == 0);
  CHECK(lines_of(window.out).size() == 1);
  CHECK(window.out.rfind("PASS parent-rule", 0) == 0);
}

TEST_CASE("kfold k=1 output is byte-identical to seq") {
  const CliResult direct = run_cli("seq -n 1000");
  const CliResult folded = run_cli("kfold -k 1 -n 1000");
  REQUIRE(direct.exit_code == 0);
  REQUIRE(folded.exit_code == 0);
  CHECK(direct.out == folded.out);

  const CliResult direct_b = run_cli("seq -n 1000 --format bfile");
  const CliResult folded_b = run_cli("kfold -k 1 -n 1000 --format bfile");
  CHECK(direct_b.out == folded_b.out);
}

TEST_CASE("kfold reports observations on stderr") {
  const CliResult r = run_cli("kfold -k 2 -n 1000");
  REQUIRE(r.exit_code == 0);
  CHECK(r.err.find("# kfold k=2 n=1000") != std::string::npos);
  CHECK(r.err.find("# well-defined: yes") != std::string::npos);
  CHECK(r.err.find("# slow-growing:") != std::string::npos);
  CHECK(r.err.find("# frequency alphabet {1,2}:") != std::string::npos);
}

TEST_CASE("kfold runs a supplied factorization spec") {
  const CliResult r =
      run_cli("kfold -k 2 -n 1000 --spec 'seeds=2,1,2;rule=2,1;scheme=squares-from-3'");
  REQUIRE(r.exit_code == 0);  // observations only without --strict
  CHECK(r.err.find("# factorization:") != std::string::npos);
}

TEST_CASE("bench completes and the csv format is pinned") {
  const CliResult tiny = run_cli("bench -n 1");
  REQUIRE(tiny.exit_code == 0);

  const CliResult r = run_cli("bench -n 1000 --format csv");
  REQUIRE(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] == "method,n,nanos");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    CHECK(lines[i].find(",1000,") != std::string::npos);
  }
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("bogus").exit_code == 2);
  CHECK(run_cli("seq --method bogus").exit_code == 2);
  CHECK(run_cli("seq -n 0").exit_code == 2);
  CHECK(run_cli("seq --format dot").exit_code == 2);
  CHECK(run_cli("word --check garbage").exit_code == 2);
  CHECK(run_cli("word --wn 41").exit_code == 2);  // expansion cap
}

TEST_CASE("--out writes the same bytes to a file") {
  const std::string path = "/tmp/gseq_out_" + std::to_string(getpid()) + ".txt";
  const CliResult direct = run_cli("seq -n 50");
  const CliResult to_file = run_cli("seq -n 50 --out " + path);
  REQUIRE(to_file.exit_code == 0);
  CHECK(to_file.out.empty());
  std::ifstream f(path);
  std::stringstream content;
  content << f.rdbuf();
  CHECK(content.str() == direct.out);
  std::remove(path.c_str());
}

TEST_CASE("help exits cleanly") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("tree --help").exit_code == 0);
}

int cli_test_main(int argc, char** argv) {
  std::vector<char*> pass_through;
  for (int i = 0; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg.rfind("--gseq-bin=", 0) == 0) {
      g_gseq_bin = arg.substr(11);
    } else {
      pass_through.push_back(argv[i]);
    }
  }
  if (g_gseq_bin.empty()) {
    std::fprintf(stderr, "cli_tests: pass --gseq-bin=<path to gseq binary>\n");
    return 2;
  }
  doctest::Context ctx(static_cast<int>(pass_through.size()), pass_through.data());
  return ctx.run();
}

int main(int argc, char** argv) { return cli_test_main(argc, argv); }
