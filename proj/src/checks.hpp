#pragma once

#include "rqft/runner.hpp"

namespace rqft::detail {

std::vector<CheckInfo> builtin_checks();

}  // namespace rqft::detail
