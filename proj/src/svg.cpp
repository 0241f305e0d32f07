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

#include "qlga/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace qlga {

std::string svg_line_chart(const std::string& title, const std::vector<SvgSeries>& series) {
    const double width = 640, height = 420;
    const double ml = 56, mr = 16, mt = 36, mb = 40;
    const double pw = width - ml - mr, ph = height - mt - mb;

    std::size_t points = 1;
    double vmax = 1.0;
    for (const auto& s : series) {
        points = std::max(points, s.values.size());
        for (double v : s.values) vmax = std::max(vmax, v);
    }
    vmax *= 1.05;

    auto fx = [&](std::size_t i) {
        return ml + (points > 1 ? pw * static_cast<double>(i) / static_cast<double>(points - 1) : pw / 2);
    };
    auto fy = [&](double v) { return mt + ph * (1.0 - v / vmax); };

    std::ostringstream os;
    char buf[128];
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
       << title << "</text>\n";
    os << "<line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\"" << ml + pw << "\" y2=\""
       << mt + ph << "\" stroke=\"#333\"/>\n";
    os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << mt + ph
       << "\" stroke=\"#333\"/>\n";
    for (int tick = 0; tick <= 4; ++tick) {
        double v = vmax * tick / 4.0;
        std::snprintf(buf, sizeof buf, "%.4g", v);
        os << "<text x=\"" << ml - 6 << "\" y=\"" << fy(v) + 4
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << buf
           << "</text>\n";
    }
    std::snprintf(buf, sizeof buf, "%zu", points - 1);
    os << "<text x=\"" << ml + pw << "\" y=\"" << height - 12
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">block " << buf
       << "</text>\n";

    double ly = mt + 8;
    for (const auto& s : series) {
        os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.values.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.2f,%.2f ", fx(i), fy(s.values[i]));
            os << buf;
        }
        os << "\"/>\n";
        os << "<rect x=\"" << ml + pw - 120 << "\" y=\"" << ly - 8
           << "\" width=\"12\" height=\"3\" fill=\"" << s.color << "\"/>\n";
        os << "<text x=\"" << ml + pw - 102 << "\" y=\"" << ly
           << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.label << "</text>\n";
        ly += 16;
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace qlga
