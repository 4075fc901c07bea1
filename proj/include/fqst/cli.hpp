#pragma once

// Command implementations behind the fqst executable. Each returns the
// process exit code and writes its document or report to `out`, messages to
// `err`.

#include <iosfwd>
#include <optional>
#include <string>

namespace fqst::cli {

enum ExitCode : int {
  kSuccess = 0,
  kCertificateFailure = 1,
  kInputError = 2,
  kGuardRefusal = 3,
};

struct Options {
  // Scaled by max(1, coordinate extent) for position checks.
  double tolerance = 1e-9;
  std::optional<int> guard_n;
  // Echoed in reports; no command draws random numbers.
  std::optional<long long> seed;
  unsigned threads = 0;
};

int solve_topology(const std::string& path, const Options& options, std::ostream& out,
                   std::ostream& err);
int exact(const std::string& path, const Options& options, std::ostream& out, std::ostream& err);
int check(const std::string& path, const Options& options, std::ostream& out, std::ostream& err);
int render(const std::string& path, const std::string& svg_path, const Options& options,
           std::ostream& out, std::ostream& err);
int bounds(const std::string& path, const Options& options, std::ostream& out, std::ostream& err);

}  // namespace fqst::cli
