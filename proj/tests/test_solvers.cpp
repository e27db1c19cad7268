#include "doctest.h"
#include "hyperfol/error.hpp"
#include "hyperfol/solvers.hpp"

#include <sys/stat.h>
#include <unistd.h>

#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>

using namespace hyperfol;
namespace fs = std::filesystem;

namespace {

// Scratch directory with small shell scripts standing in for solvers.
struct Fakes {
  fs::path dir;

  Fakes() {
    dir = fs::temp_directory_path() / ("hyperfol-fake-" + std::to_string(getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    std::ofstream(dir / "problem.smt2") << "(check-sat)\n";
  }
  ~Fakes() { fs::remove_all(dir); }

  std::string script(const std::string& name, const std::string& body) {
    fs::path p = dir / name;
    std::ofstream(p) << "#!/bin/sh\n" << body << "\n";
    chmod(p.c_str(), 0755);
    return p.string();
  }

  SolverConfig cfg(const std::string& name, const std::string& body, double timeout = 10) {
    SolverConfig c;
    c.name = name;
    c.command = script(name + ".sh", body) + " {file}";
    c.sat_regex = "SZS status Satisfiable";
    c.unsat_regex = "SZS status Unsatisfiable";
    c.timeout_sec = timeout;
    return c;
  }

  fs::path problem() const { return dir / "problem.smt2"; }
};

// Processes whose command line mentions `marker`.
int count_processes(const std::string& marker) {
  int n = 0;
  for (const auto& e : fs::directory_iterator("/proc")) {
    std::string pid = e.path().filename();
    if (pid.find_first_not_of("0123456789") != std::string::npos) continue;
    std::ifstream in(e.path() / "cmdline");
    std::stringstream ss;
    ss << in.rdbuf();
    std::string cmd = ss.str();
    for (auto& c : cmd)
      if (c == '\0') c = ' ';
    if (cmd.find(marker) != std::string::npos) ++n;
  }
  return n;
}

// Waits for zombies to be reaped by init.
int settle(const std::string& marker) {
  for (int i = 0; i < 50; ++i) {
    if (count_processes(marker) == 0) return 0;
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
  }
  return count_processes(marker);
}

}  // namespace

TEST_CASE("config parsing") {
  auto cfgs = parse_solver_config(R"(
# comment
[a]
command = "tool --x {file}"   # trailing
format = "tptp"
sat_regex = "SZS status Satisfiable"
unsat_regex = "SZS status Unsatisfiable"
timeout_sec = 2.5

[b]
command = "other {file}"
sat_regex = "^sat$"
unsat_regex = "^unsat$"
)");
  REQUIRE(cfgs.size() == 2);
  CHECK(cfgs[0].name == "a");
  CHECK(cfgs[0].format == OutputFormat::TptpTff);
  CHECK(cfgs[0].timeout_sec == 2.5);
  CHECK(cfgs[1].format == OutputFormat::Smtlib2);
  CHECK(cfgs[1].timeout_sec == kDefaultTimeoutSec);

  CHECK_THROWS_AS(parse_solver_config("[a]\nformat = \"smtlib\"\n"), ConfigError);
  CHECK_THROWS_AS(parse_solver_config("command = \"x\"\n"), ConfigError);
  CHECK_THROWS_AS(parse_solver_config("[a]\ncommand = \"x\"\nsat_regex = \"s\"\nunsat_regex = \"s\"\n"), ConfigError);
  CHECK_THROWS_AS(parse_solver_config("[a]\ncommand = \"x\"\nsat_regex = \"(\"\nunsat_regex = \"u\"\n"), ConfigError);
  CHECK_THROWS_AS(parse_solver_config("[a]\ncommand = \"x\"\nbogus = 1\n"), ConfigError);
  CHECK_THROWS_AS(
      parse_solver_config("[a]\ncommand = \"x\"\nsat_regex = \"s\"\nunsat_regex = \"u\"\ntimeout_sec = -1\n"),
      ConfigError);
}

TEST_CASE("built-in configuration") {
  auto cfgs = parse_solver_config(default_solver_config_text());
  std::vector<std::string> names;
  for (const auto& c : cfgs) names.push_back(c.name);
  for (const char* n : {"z3", "cvc5", "vampire", "eprover", "iprover", "paradox"})
    CHECK(std::find(names.begin(), names.end(), n) != names.end());
  for (const auto& c : cfgs) CHECK(c.timeout_sec == 60);
}

TEST_CASE("argv substitution") {
  SolverConfig c;
  c.command = "solver -T:{timeout} --ms={timeout_ms} 'a b' {file}";
  c.timeout_sec = 1.5;
  auto argv = solver_argv(c, "/tmp/p.smt2");
  CHECK(argv == std::vector<std::string>{"solver", "-T:2", "--ms=1500", "a b", "/tmp/p.smt2"});
}

TEST_CASE("run_solver verdicts") {
  Fakes f;
  CHECK(run_solver(f.cfg("u", "echo '% SZS status Unsatisfiable for p'"), f.problem()).result == Result::Unsat);
  CHECK(run_solver(f.cfg("s", "echo 'SZS status Satisfiable'"), f.problem()).result == Result::Sat);

  auto crash = run_solver(f.cfg("c", "echo oops; exit 3"), f.problem());
  CHECK(crash.result == Result::Unknown);
  CHECK(crash.detail == "exit 3");

  // reads the problem file through {file}
  auto cat = run_solver(f.cfg("f", "grep -q check-sat \"$1\" && echo 'SZS status Unsatisfiable'"), f.problem());
  CHECK(cat.result == Result::Unsat);

  SolverConfig missing = f.cfg("m", "true");
  missing.command = "/nonexistent/solver {file}";
  CHECK_THROWS_AS(run_solver(missing, f.problem()), SolverNotFound);
  CHECK_FALSE(solver_available(missing));
}

TEST_CASE("run_solver timeout kills the process group") {
  Fakes f;
  auto v = run_solver(f.cfg("t", "sleep 29.0417 & sleep 29.0417; echo 'SZS status Satisfiable'", 0.5), f.problem());
  CHECK(v.result == Result::Unknown);
  CHECK(v.detail == "timeout");
  CHECK(v.elapsed >= 0.45);
  CHECK(v.elapsed < 2.0);
  CHECK(settle("29.0417") == 0);
}

TEST_CASE("portfolio: first decision wins and the rest are cancelled") {
  Fakes f;
  auto fast = f.cfg("fast", "sleep 0.2; echo 'SZS status Unsatisfiable'");
  auto slow = f.cfg("slow", "sleep 28.0417 & wait");
  auto slower = f.cfg("slower", "sleep 28.0417 & sleep 28.0417");
  std::vector<Verdict> members;
  auto start = std::chrono::steady_clock::now();
  auto v = run_portfolio({fast, slow, slower}, f.problem(), &members);
  double took = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(v.result == Result::Unsat);
  CHECK(v.solver == "fast");
  CHECK(took < 5);
  REQUIRE(members.size() == 3);
  for (const auto& m : members)
    if (m.solver != "fast") CHECK(m.detail == "cancelled");
  CHECK(settle("28.0417") == 0);
}

TEST_CASE("portfolio: all unknown") {
  Fakes f;
  auto v = run_portfolio({f.cfg("a", "echo maybe"), f.cfg("b", "exit 1")}, f.problem());
  CHECK(v.result == Result::Unknown);
}

TEST_CASE("portfolio: missing members") {
  Fakes f;
  SolverConfig missing = f.cfg("m", "true");
  missing.command = "/nonexistent/solver {file}";
  std::vector<Verdict> members;
  auto v = run_portfolio({missing, f.cfg("s", "echo 'SZS status Satisfiable'")}, f.problem(), &members);
  CHECK(v.result == Result::Sat);
  CHECK(members.size() == 2);
  CHECK_THROWS_AS(run_portfolio({missing}, f.problem()), SolverNotFound);
}

TEST_CASE("portfolio: conflicting answers are an error") {
  Fakes f;
  // Each prints, then waits for the other to have printed before exiting.
  std::string d = f.dir.string();
  auto a = f.cfg("a", "echo 'SZS status Satisfiable'; touch " + d + "/a; while [ ! -e " + d +
                          "/b ]; do sleep 0.01; done");
  auto b = f.cfg("b", "echo 'SZS status Unsatisfiable'; touch " + d + "/b; while [ ! -e " + d +
                          "/a ]; do sleep 0.01; done");
  CHECK_THROWS_AS(run_portfolio({a, b}, f.problem()), SoundnessConflict);
}

TEST_CASE("single-member portfolio is deterministic") {
  Fakes f;
  auto c = f.cfg("d", "echo 'SZS status Satisfiable'");
  for (int i = 0; i < 3; ++i) {
    auto v = run_portfolio({c}, f.problem());
    CHECK(v.result == Result::Sat);
    CHECK(v.solver == "d");
  }
}
