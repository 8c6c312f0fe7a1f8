// Commands behind the handlekit executable. Each returns the process exit
// code: 0 when every emitted certificate passes, 1 on a failing certificate
// or invalid parameter values, 2 on usage errors (unknown ids, commands or
// parameter keys).
#pragma once

#include <iosfwd>

#include "run_config.hpp"

namespace hk::cli {

struct Streams {
  std::ostream& out;   // JSON
  std::ostream* csv;   // optional plot data
  std::ostream& err;   // diagnostics
};

int cmd_verify(const RunConfig& cfg, Streams s);
int cmd_build_handle(const RunConfig& cfg, Streams s);
int cmd_prepare(const RunConfig& cfg, Streams s);
int cmd_push_off(const RunConfig& cfg, Streams s);
int cmd_emit_diagram(const RunConfig& cfg, Streams s);
int cmd_pipeline(const RunConfig& cfg, Streams s);

/// Dispatches on cfg.command and maps exceptions to exit codes.
int run_command(const RunConfig& cfg, Streams s);

}  // namespace hk::cli
