#pragma once

#include <string>
#include <vector>

namespace saa::cli {

// Exit codes: 0 success, 1 usage error, 2 solver reported Infeasible,
// 3 NumericalFailure.
int run(const std::vector<std::string>& args);

}  // namespace saa::cli
