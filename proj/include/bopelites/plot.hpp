// Copyright 2026 The bopelites Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "bopelites/experiment.hpp"

namespace bopelites {

/// Values below this are drawn at this level on the log plot.
inline constexpr double kLogFloor = 1e-6;

/// Convergence plot of mean TE per iteration with a shaded +/- one standard
/// error band for each solver. Each solver contributes one <polygon
/// class="band"> and one <polyline class="mean">.
std::string render_convergence_svg(const std::vector<SummaryRow>& summary, bool log_scale);

/// Writes te_linear.svg and te_log.svg into dir. Throws InvalidArgument for
/// an empty summary.
void emit_plots(const std::vector<SummaryRow>& summary, const std::filesystem::path& dir);

} // namespace bopelites
