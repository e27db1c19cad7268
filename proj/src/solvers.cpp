#include "hyperfol/solvers.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <regex>
#include <sstream>
#include <thread>

#include "hyperfol/error.hpp"
#include "solvers_default.hpp"

extern char** environ;

namespace hyperfol {

std::string to_string(Result r) {
  switch (r) {
    case Result::Sat: return "SAT";
    case Result::Unsat: return "UNSAT";
    case Result::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// A quoted string with \" and \\ escapes, or a bare token.
std::string parse_value(const std::string& raw, std::size_t line) {
  std::string v = trim(raw);
  if (v.empty()) throw ConfigError("line " + std::to_string(line) + ": missing value");
  if (v[0] != '"') {
    auto hash = v.find('#');
    return trim(v.substr(0, hash));
  }
  std::string out;
  std::size_t i = 1;
  for (; i < v.size() && v[i] != '"'; ++i) {
    if (v[i] == '\\' && i + 1 < v.size()) ++i;
    out += v[i];
  }
  if (i >= v.size()) throw ConfigError("line " + std::to_string(line) + ": unterminated string");
  std::string rest = trim(v.substr(i + 1));
  if (!rest.empty() && rest[0] != '#')
    throw ConfigError("line " + std::to_string(line) + ": unexpected text after value");
  return out;
}

void finish(SolverConfig& cfg, bool seen_command) {
  if (!seen_command || trim(cfg.command).empty()) throw ConfigError("solver [" + cfg.name + "]: missing command");
  if (cfg.sat_regex.empty() || cfg.unsat_regex.empty())
    throw ConfigError("solver [" + cfg.name + "]: sat_regex and unsat_regex are required");
  try {
    std::regex(cfg.sat_regex);
    std::regex(cfg.unsat_regex);
  } catch (const std::regex_error& e) {
    throw ConfigError("solver [" + cfg.name + "]: bad regex: " + e.what());
  }
  if (cfg.sat_regex == cfg.unsat_regex) throw ConfigError("solver [" + cfg.name + "]: patterns must differ");
}

std::optional<std::string> find_executable(const std::string& name) {
  if (name.find('/') != std::string::npos) {
    if (access(name.c_str(), X_OK) == 0) return name;
    return std::nullopt;
  }
  const char* path = std::getenv("PATH");
  std::stringstream ss(path ? path : "/usr/bin:/bin");
  std::string dir;
  while (std::getline(ss, dir, ':')) {
    if (dir.empty()) dir = ".";
    std::string full = dir + "/" + name;
    if (access(full.c_str(), X_OK) == 0) return full;
  }
  return std::nullopt;
}

// Helper scripts shipped with the sources; $HYPERFOL_TOOLS_DIR overrides.
std::string tools_dir() {
  if (const char* env = std::getenv("HYPERFOL_TOOLS_DIR"); env && *env) return env;
  return HYPERFOL_TOOLS_DIR;
}

std::string replace_all(std::string s, const std::string& from, const std::string& to) {
  for (std::size_t pos = 0; (pos = s.find(from, pos)) != std::string::npos; pos += to.size())
    s.replace(pos, from.size(), to);
  return s;
}

Result classify(const std::string& output, const SolverConfig& cfg) {
  std::regex sat(cfg.sat_regex), unsat(cfg.unsat_regex);
  std::istringstream in(output);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (std::regex_search(line, unsat)) return Result::Unsat;
    if (std::regex_search(line, sat)) return Result::Sat;
  }
  return Result::Unknown;
}

}  // namespace

std::vector<SolverConfig> parse_solver_config(const std::string& text) {
  std::vector<SolverConfig> out;
  std::optional<SolverConfig> cur;
  bool seen_command = false;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line[0] == '[') {
      if (line.back() != ']') throw ConfigError("line " + std::to_string(lineno) + ": malformed section header");
      if (cur) {
        finish(*cur, seen_command);
        out.push_back(*cur);
      }
      cur = SolverConfig{};
      cur->name = trim(line.substr(1, line.size() - 2));
      if (cur->name.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty section name");
      for (const auto& c : out)
        if (c.name == cur->name) throw ConfigError("duplicate solver [" + cur->name + "]");
      seen_command = false;
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    if (!cur) throw ConfigError("line " + std::to_string(lineno) + ": key outside a [solver] section");
    std::string key = trim(line.substr(0, eq));
    std::string value = parse_value(line.substr(eq + 1), lineno);
    if (key == "command") {
      cur->command = value;
      seen_command = true;
    } else if (key == "format") {
      if (value == "smtlib" || value == "smtlib2") cur->format = OutputFormat::Smtlib2;
      else if (value == "tptp") cur->format = OutputFormat::TptpTff;
      else throw ConfigError("line " + std::to_string(lineno) + ": unknown format '" + value + "'");
    } else if (key == "sat_regex") {
      cur->sat_regex = value;
    } else if (key == "unsat_regex") {
      cur->unsat_regex = value;
    } else if (key == "timeout_sec") {
      char* end = nullptr;
      double t = std::strtod(value.c_str(), &end);
      if (end == value.c_str() || *end != '\0' || !(t > 0))
        throw ConfigError("line " + std::to_string(lineno) + ": timeout_sec must be a positive number");
      cur->timeout_sec = t;
    } else {
      throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  if (cur) {
    finish(*cur, seen_command);
    out.push_back(*cur);
  }
  return out;
}

const std::string& default_solver_config_text() {
  static const std::string text = kDefaultSolverConfig;
  return text;
}

std::vector<SolverConfig> load_solver_configs(const std::optional<std::filesystem::path>& path) {
  std::optional<std::filesystem::path> p = path;
  if (!p) {
    if (const char* env = std::getenv(kConfigEnvVar); env && *env) p = env;
  }
  if (!p) return parse_solver_config(default_solver_config_text());
  std::ifstream in(*p);
  if (!in) throw ConfigError("cannot read solver config " + p->string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_solver_config(ss.str());
}

std::vector<std::string> solver_argv(const SolverConfig& cfg, const std::filesystem::path& file) {
  const long secs = std::max(1L, static_cast<long>(std::ceil(cfg.timeout_sec)));
  const long ms = static_cast<long>(std::llround(cfg.timeout_sec * 1000));
  std::vector<std::string> argv;
  std::string cur;
  bool in_word = false;
  char quote = 0;
  for (char c : cfg.command) {
    if (quote) {
      if (c == quote) quote = 0;
      else cur += c;
    } else if (c == '"' || c == '\'') {
      quote = c;
      in_word = true;
    } else if (c == ' ' || c == '\t') {
      if (in_word) argv.push_back(cur);
      cur.clear();
      in_word = false;
    } else {
      cur += c;
      in_word = true;
    }
  }
  if (in_word) argv.push_back(cur);
  for (auto& a : argv) {
    a = replace_all(a, "{tools}", tools_dir());
    a = replace_all(a, "{file}", file.string());
    a = replace_all(a, "{timeout_ms}", std::to_string(ms));
    a = replace_all(a, "{timeout}", std::to_string(secs));
  }
  return argv;
}

bool solver_available(const SolverConfig& cfg) {
  auto argv = solver_argv(cfg, "x");
  return !argv.empty() && find_executable(argv[0]).has_value();
}

Verdict run_solver(const SolverConfig& cfg, const std::filesystem::path& problem_file,
                   const std::atomic<bool>* cancel) {
  using clock = std::chrono::steady_clock;
  Verdict v;
  v.solver = cfg.name;
  auto argv = solver_argv(cfg, problem_file);
  if (argv.empty()) throw ConfigError("solver [" + cfg.name + "]: empty command");
  auto exe = find_executable(argv[0]);
  if (!exe) throw SolverNotFound(argv[0]);

  int fds[2];
  if (pipe2(fds, O_CLOEXEC) != 0) throw Error("pipe failed");
  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, fds[1], 1);
  posix_spawn_file_actions_adddup2(&actions, fds[1], 2);
  posix_spawn_file_actions_addopen(&actions, 0, "/dev/null", O_RDONLY, 0);
  posix_spawnattr_t attr;
  posix_spawnattr_init(&attr);
  posix_spawnattr_setflags(&attr, POSIX_SPAWN_SETPGROUP);
  posix_spawnattr_setpgroup(&attr, 0);

  std::vector<char*> cargv;
  for (auto& a : argv) cargv.push_back(a.data());
  cargv.push_back(nullptr);
  pid_t pid = 0;
  const auto start = clock::now();
  int rc = posix_spawn(&pid, exe->c_str(), &actions, &attr, cargv.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  posix_spawnattr_destroy(&attr);
  close(fds[1]);
  if (rc != 0) {
    close(fds[0]);
    throw SolverNotFound(argv[0]);
  }

  std::string output;
  const auto deadline = start + std::chrono::duration_cast<clock::duration>(std::chrono::duration<double>(cfg.timeout_sec));
  bool killed = false;
  char buf[4096];
  for (;;) {
    if (cancel && cancel->load()) {
      v.detail = "cancelled";
      killed = true;
      break;
    }
    auto now = clock::now();
    if (now >= deadline) {
      v.detail = "timeout";
      killed = true;
      break;
    }
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count();
    pollfd pfd{fds[0], POLLIN, 0};
    int pr = poll(&pfd, 1, static_cast<int>(std::min<long long>(left + 1, 50)));
    if (pr < 0 && errno != EINTR) break;
    if (pr > 0) {
      ssize_t n = read(fds[0], buf, sizeof buf);
      if (n > 0) {
        output.append(buf, static_cast<std::size_t>(n));
        continue;
      }
      if (n == 0) break;  // every writer closed
    }
  }
  if (killed) kill(-pid, SIGKILL);
  // A cancelled member may already have printed its answer.
  if (killed && v.detail == "cancelled") {
    pollfd pfd{fds[0], POLLIN, 0};
    while (poll(&pfd, 1, 0) > 0) {
      ssize_t n = read(fds[0], buf, sizeof buf);
      if (n <= 0) break;
      output.append(buf, static_cast<std::size_t>(n));
    }
  }
  close(fds[0]);
  int status = 0;
  while (waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  // Stray grandchildren that kept no pipe open.
  kill(-pid, SIGKILL);
  v.elapsed = std::chrono::duration<double>(clock::now() - start).count();
  if (killed) {
    if (v.detail == "cancelled") v.result = classify(output, cfg);
    return v;
  }
  v.result = classify(output, cfg);
  if (v.result == Result::Unknown) {
    if (WIFEXITED(status)) v.detail = "exit " + std::to_string(WEXITSTATUS(status));
    else if (WIFSIGNALED(status)) v.detail = "signal " + std::to_string(WTERMSIG(status));
  }
  return v;
}

Verdict run_portfolio(const std::vector<SolverConfig>& cfgs, const std::filesystem::path& problem_file,
                      std::vector<Verdict>* members) {
  std::vector<std::pair<SolverConfig, std::filesystem::path>> jobs;
  for (const auto& c : cfgs) jobs.emplace_back(c, problem_file);
  return run_portfolio(jobs, members);
}

Verdict run_portfolio(const std::vector<std::pair<SolverConfig, std::filesystem::path>>& jobs,
                      std::vector<Verdict>* members) {
  std::atomic<bool> cancel{false};
  std::mutex mu;
  std::condition_variable cv;
  std::vector<Verdict> results;
  std::size_t done = 0, missing = 0;
  std::string first_missing;
  std::optional<Verdict> winner;

  std::vector<std::thread> threads;
  for (const auto& [cfg, problem_file] : jobs) {
    threads.emplace_back([&, cfg, problem_file] {
      Verdict v;
      bool absent = false;
      try {
        v = run_solver(cfg, problem_file, &cancel);
      } catch (const SolverNotFound& e) {
        v.solver = cfg.name;
        v.detail = "not found";
        absent = true;
      } catch (const std::exception& e) {
        v.solver = cfg.name;
        v.detail = e.what();
      }
      std::lock_guard lock(mu);
      if (absent && missing++ == 0) first_missing = cfg.name;
      if (v.result != Result::Unknown && !winner) {
        winner = v;
        cancel = true;
      }
      results.push_back(v);
      ++done;
      cv.notify_one();
    });
  }
  {
    std::unique_lock lock(mu);
    cv.wait(lock, [&] { return done == jobs.size(); });
  }
  for (auto& t : threads) t.join();

  if (members) *members = results;
  bool sat = false, unsat = false;
  for (const auto& r : results) {
    sat |= r.result == Result::Sat;
    unsat |= r.result == Result::Unsat;
  }
  if (sat && unsat) {
    std::string who;
    for (const auto& r : results)
      if (r.result != Result::Unknown) who += " " + r.solver + "=" + to_string(r.result);
    throw SoundnessConflict("solvers disagree:" + who);
  }
  if (!jobs.empty() && missing == jobs.size()) throw SolverNotFound(first_missing);
  if (winner) return *winner;
  Verdict v;
  v.solver = "portfolio";
  double longest = 0;
  for (const auto& r : results) longest = std::max(longest, r.elapsed);
  v.elapsed = longest;
  v.detail = "no decision";
  return v;
}

}  // namespace hyperfol
