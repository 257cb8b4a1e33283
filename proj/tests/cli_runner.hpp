#pragma once

// Runs the ramsey executable and captures stdout and the exit code.

#include <cstdio>
#include <filesystem>
#include <random>
#include <string>
#include <sys/wait.h>

#ifndef RAMSEY_CLI_PATH
#error "RAMSEY_CLI_PATH must point at the ramsey executable"
#endif

namespace cli {

struct Run {
  int code = -1;
  std::string out;
};

inline Run run(const std::string &args) {
  const std::string cmd = std::string("\"") + RAMSEY_CLI_PATH + "\" " + args + " 2>/dev/null";
  Run r;
  FILE *p = popen(cmd.c_str(), "r");
  if (!p)
    return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0)
    r.out.append(buf, got);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

/// A fresh scratch directory, removed on destruction.
class ScratchDir {
public:
  ScratchDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("ramsey_test_" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~ScratchDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  std::string file(const std::string &name) const { return (path_ / name).string(); }

private:
  std::filesystem::path path_;
};

} // namespace cli
