#pragma once

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace cli {

struct Result {
  int status = -1;
  std::string out;
  std::string err;
};

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Runs the thermofit binary through the shell with `args` appended.
inline Result run(const std::string& args, const std::string& env = "THERMOFIT_NO_COLOR=1") {
  static int counter = 0;
  const auto err_path = std::filesystem::temp_directory_path() /
                        ("thermofit_stderr_" + std::to_string(::getpid()) + "_" +
                         std::to_string(counter++));
  const std::string cmd =
      env + " '" + THERMOFIT_CLI + "' " + args + " 2>'" + err_path.string() + "'";
  Result r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int raw = ::pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.err = slurp(err_path);
  std::filesystem::remove(err_path);
  return r;
}

}  // namespace cli
