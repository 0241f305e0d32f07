// Copyright 2026-present the qlga project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

namespace qlga {

struct SvgSeries {
    std::string label;
    std::string color;  // CSS color
    std::vector<double> values;
};

/// Minimal self-contained line chart; x axis is the value index.
std::string svg_line_chart(const std::string& title, const std::vector<SvgSeries>& series);

}  // namespace qlga
