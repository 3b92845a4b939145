// SPDX-License-Identifier: Apache-2.0
//
// iagrass: interference alignment with quantized Grassmannian CSI feedback
// Copyright (C) 2026 The iagrass authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef IAGRASS_REPORT_HPP
#define IAGRASS_REPORT_HPP

#include "iagrass/harness.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace iagrass {

inline constexpr const char* kCsvHeader = "scheme,snr_db,bits,mean_sum_rate,stderr,mean_leakage,trials";

// CSV text with the fixed header and 6-decimal values. Rows are emitted in
// sort_rows order. The bits column holds one integer when every user has the
// same budget, the per-user budgets joined by '/' otherwise, and "inf" for
// perfect CSI.
std::string format_csv(std::vector<CurveRow> rows);
void emit_csv(const std::vector<CurveRow>& rows, const std::filesystem::path& path);

// Inverse of format_csv for the serialized columns. Throws ConfigError on a
// malformed document.
std::vector<CurveRow> parse_csv(const std::string& text);
std::vector<CurveRow> read_csv(const std::filesystem::path& path);

// Self-contained gnuplot script: one series per CurveRow::series (falling
// back to scheme and bits), stderr whiskers, single-point series drawn as
// markers only.
std::string format_plot(const std::vector<CurveRow>& rows, const std::string& title = "");
void emit_plot(const std::vector<CurveRow>& rows, const std::filesystem::path& path,
               const std::string& title = "");

} // namespace iagrass

#endif
