#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace repel {

struct CommandOptions {
  std::string config_path;
  std::string points_path;  // diagnose only
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed_override;
  bool force_nondeterministic = false;
};

// Exit codes: 0 success (including honest stagnation), 1 config/usage error,
// 2 resource-limit error.
int cmd_minimize(const CommandOptions& options);
int cmd_verify_pretrace(const CommandOptions& options);
int cmd_diagnose(const CommandOptions& options);
int cmd_sweep(const CommandOptions& options);
int cmd_group_audit(const CommandOptions& options);

}  // namespace repel
