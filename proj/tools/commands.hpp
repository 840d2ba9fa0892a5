#pragma once

#include <optional>
#include <string>

#include "spinphase/checks.hpp"
#include "spinphase/config.hpp"

namespace spinphase::cli {

// Exit codes shared by every subcommand.
constexpr int kOk = 0;
constexpr int kCheckFailure = 1;
constexpr int kUsageError = 2;
constexpr int kNumericDomainError = 3;

int cmd_simulate(const ScenarioConfig& config, const std::string& out_path);
int cmd_verify(const CheckOptions& opts);
int cmd_sweep(const ScenarioConfig& base, const std::string& axis, double lo, double hi,
              int count, const std::string& out_path);
int cmd_separability(const ScenarioConfig& config, const std::optional<std::string>& out_path,
                     BasisGauge gauge);

} // namespace spinphase::cli
