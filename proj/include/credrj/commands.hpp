#ifndef CREDRJ_COMMANDS_HPP
#define CREDRJ_COMMANDS_HPP

#include <cstdint>
#include <optional>
#include <string>

namespace credrj {

struct RunConfig {
  std::string command;  // fit | rj | dic | simulate | diagnose | predict
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed_override;
};

/// Executes one subcommand end to end: parse config, run the samplers,
/// write the artifacts into out_dir. Returns a process exit status.
int run_subcommand(const RunConfig& run);

}  // namespace credrj

#endif
