// SPDX-FileCopyrightText: Contributors to the suc-benders project
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <ostream>

namespace suc {

/// Exit codes: 0 converged, 2 not converged, 3 compared objectives disagree,
/// 1 bad input or usage.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace suc
