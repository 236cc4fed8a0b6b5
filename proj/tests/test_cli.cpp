#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

// Runs a shell command line with the CLI substituted for "@"; stderr is
// folded into the captured output.
Result run(const std::string& args) {
  std::string cmd;
  for (char ch : args) {
    if (ch == '@')
      cmd += std::string("'") + HGA_CLI_PATH + "'";
    else
      cmd += ch;
  }
  cmd += " 2>&1";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buffer[4096];
  while (std::size_t n = std::fread(buffer, 1, sizeof buffer, pipe)) r.out.append(buffer, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch_dir() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("hga_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("sylvester output verifies") {
  for (int p : {0, 2, 5}) {
    CAPTURE(p);
    const auto r = run("@ sylvester " + std::to_string(p) + " | @ verify -");
    CHECK(r.code == 0);
    CHECK(r.out.find("hadamard: yes") != std::string::npos);
  }
  const auto path = scratch_dir() / "h16.txt";
  CHECK(run("@ sylvester 4 --out '" + path.string() + "'").code == 0);
  CHECK(run("@ verify '" + path.string() + "'").code == 0);
}

TEST_CASE("verify reports a non-Hadamard matrix with exit 3") {
  const auto path = scratch_dir() / "ones.txt";
  std::ofstream(path) << "hadamard-ga matrix m=4\n++++\n++++\n++++\n++++\n";
  const auto r = run("@ verify '" + path.string() + "'");
  CHECK(r.code == 3);
  CHECK(r.out.find("F2=12") != std::string::npos);
  CHECK(r.out.find("F1=48") != std::string::npos);
}

TEST_CASE("usage and parse errors exit 1") {
  auto r = run("@ search --order 10 --seed 1");
  CHECK(r.code == 1);
  CHECK(r.out.find("multiple of 4") != std::string::npos);
  CHECK(run("@ search --order 12 --nr 7 --seed 1").code == 1);
  CHECK(run("@ search --seed 1").code == 1);
  CHECK(run("@ search --order 12 --seed banana").code == 1);
  CHECK(run("@ frobnicate").code == 1);
  CHECK(run("@ sylvester 11").code == 1);

  const auto bad = scratch_dir() / "bad.txt";
  std::ofstream(bad) << "hadamard-ga matrix m=2\n++\n+?\n";
  r = run("@ verify '" + bad.string() + "'");
  CHECK(r.code == 1);
  CHECK(r.out.find("line 3") != std::string::npos);
}

TEST_CASE("I/O errors exit 4") {
  CHECK(run("@ verify '" + (scratch_dir() / "nope.txt").string() + "'").code == 4);
  CHECK(run("@ search --order 8 -N 50 -T 10 --seed 1 --out /nonexistent/dir/r.json").code == 4);
}

TEST_CASE("search writes a record and trace") {
  const auto rec = scratch_dir() / "rec.json";
  const auto trace = scratch_dir() / "trace.csv";
  const auto r = run("@ search --order 8 -N 100 -T 1000 --seed 3 --out '" + rec.string() + "' --trace '" +
                     trace.string() + "'");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("success: true") != std::string::npos);
  CHECK(r.out.find("hadamard-ga matrix m=8") != std::string::npos);
  const auto doc = nlohmann::json::parse(slurp(rec));
  CHECK(doc["success"] == true);
  CHECK(doc["seed"] == 3);
  CHECK(doc["trace"] == trace.string());
  const auto csv = slurp(trace);
  CHECK(csv.rfind("iteration,min_fitness\n", 0) == 0);
  CHECK(csv.find("," + std::to_string(0) + "\n") != std::string::npos);
}

TEST_CASE("exhausted budget exits 2") {
  const auto r = run("@ search --order 16 -N 5 -T 3 --seed 1");
  CHECK(r.code == 2);
  CHECK(r.out.find("success: false") != std::string::npos);
  const auto t = run("@ search --order 32 -N 500 -T 1000000 --seed 1 --time-budget-secs 0.05");
  CHECK(t.code == 2);
  CHECK(t.out.find("incomplete") != std::string::npos);
}

TEST_CASE("worker count does not change CLI output") {
  const auto a = scratch_dir() / "w1.json";
  const auto b = scratch_dir() / "w3.json";
  const auto ta = scratch_dir() / "w1.csv";
  const auto tb = scratch_dir() / "w3.csv";
  run("@ search --order 12 -N 50 -T 60 --seed 7 --workers 1 --out '" + a.string() + "' --trace '" + ta.string() +
      "'");
  run("@ search --order 12 -N 50 -T 60 --seed 7 --workers 3 --out '" + b.string() + "' --trace '" + tb.string() +
      "'");
  auto ja = nlohmann::json::parse(slurp(a));
  auto jb = nlohmann::json::parse(slurp(b));
  for (auto* j : {&ja, &jb}) {
    j->erase("wall_seconds");
    j->erase("trace");
  }
  CHECK(ja == jb);
  CHECK(slurp(ta) == slurp(tb));
}

TEST_CASE("bench subcommands") {
  const auto csv = scratch_dir() / "grid.csv";
  auto r = run("@ bench grid -m 8 -N 20 -T 50 --nc-values 1,2 --nr-values 1 -R 2 --seed-base 5 -q --csv '" +
               csv.string() + "'");
  CHECK(r.code == 0);
  CHECK(r.out.find("NR\\NC") != std::string::npos);
  CHECK(slurp(csv).rfind("m,N,T,NC,NR,run_index,seed,success,iterations,wall_seconds\n", 0) == 0);
  r = run("@ bench fitness --orders 8 -N 20 --iterations 5 --repeats 1");
  CHECK(r.code == 0);
  CHECK(r.out.find("F2/F1") != std::string::npos);
  CHECK(run("@ bench fitness --orders 10 -N 20 --iterations 5").code == 1);
}

TEST_CASE("order-12 search end to end; the printed matrix verifies") {
  const auto rec = scratch_dir() / "m12.json";
  const auto r = run("@ search --order 12 --population 1000 --max-iter 10000 --nc 1 --nr 2 --seed 5 --out '" +
                     rec.string() + "'");
  REQUIRE(r.code == 0);
  const auto at = r.out.find("hadamard-ga matrix m=12");
  REQUIRE(at != std::string::npos);
  const auto found = scratch_dir() / "m12.txt";
  std::ofstream(found) << r.out.substr(at);
  CHECK(run("@ verify '" + found.string() + "'").code == 0);
  const auto doc = nlohmann::json::parse(slurp(rec));
  CHECK(doc["success"] == true);
  CHECK(doc["final_min_fitness"] == 0);
}
