#pragma once

#include <string>

#include <json.hpp>

namespace growdiff::cli {

using json = nlohmann::json;

enum ExitCode { Ok = 0, ConfigFailure = 2, NumericFailure = 3, ToleranceBreach = 4 };

// each command validates cfg, writes its outputs and returns an exit code;
// library exceptions propagate to the caller
int cmd_eigen(const json& cfg);
int cmd_exact(const json& cfg);
int cmd_numeric(const json& cfg);
int cmd_compare(const json& cfg);
int cmd_critical(const json& cfg);

}  // namespace growdiff::cli
