#ifndef NIO_TESTS_SUBPROCESS_HPP
#define NIO_TESTS_SUBPROCESS_HPP

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace testsupport {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

/// Runs a shell command, capturing combined output and the exit code.
inline RunResult run_command(const std::string& cmd) {
  std::string full = cmd + " 2>&1";
  FILE* pipe = popen(full.c_str(), "r");
  if (pipe == nullptr) throw std::runtime_error("popen failed for: " + cmd);
  RunResult result;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) {
    result.output.append(buf, got);
  }
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

/// Path of the CLI binary under test, injected by ctest; empty when the
/// test runner is invoked outside the build harness.
inline std::string cli_path() {
  const char* p = std::getenv("NIO_CLI");
  return p == nullptr ? std::string() : std::string(p);
}

inline std::string schemas_dir() {
  const char* p = std::getenv("NIO_SCHEMAS");
  return p == nullptr ? std::string() : std::string(p);
}

/// Single-quotes a string for the shell.
inline std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  out += "'";
  return out;
}

inline std::string make_temp_dir() {
  char templ[] = "/tmp/nio-tests-XXXXXX";
  char* dir = mkdtemp(templ);
  if (dir == nullptr) throw std::runtime_error("mkdtemp failed");
  return std::string(dir);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << body;
}

}  // namespace testsupport

#endif  // NIO_TESTS_SUBPROCESS_HPP
