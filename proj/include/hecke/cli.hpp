#ifndef HECKE_CLI_HPP
#define HECKE_CLI_HPP

// Command-line front end. Exit codes: 0 success, 1 usage error or refused
// request, 2 failed verification.

#include <iosfwd>
#include <string>
#include <vector>

namespace hecke {

enum class OutputFormat { plain, json, csv };

struct RunConfig {
  unsigned precision_digits = 50;  // >= 30
  std::string cache_path;          // empty: no cache file
  OutputFormat format = OutputFormat::plain;
  unsigned parallelism = 1;        // >= 1
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerification = 2;

/// Printed (to the error stream) for any request to extract traces or
/// residues; the command then exits with kExitUsage.
extern const char* const kRefusalMessage;

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hecke

#endif  // HECKE_CLI_HPP
