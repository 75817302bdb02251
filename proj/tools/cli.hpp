#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace wreathgen::cli {

enum ExitCode : int
{
  ok = 0,
  check_failed = 1,
  usage_error = 2,
};

struct RunConfig
{
  std::string command;
  std::uint64_t seed = 0;
  std::size_t leaf_cap = 10'000;
  std::size_t order_cap = 5'000;
  std::size_t index_cap = 1'000'000;
  std::string format = "json";
};

/// Runs one command; `args` excludes the program name. The report goes to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace wreathgen::cli
