#pragma once

#include <string>
#include <vector>

namespace svarkit::app {

struct Line {
    std::string name;
    std::vector<double> values;  // x = 0, 1, 2, ...
};

struct Panel {
    std::string title;
    std::vector<Line> lines;
};

/// Panels side by side with a shared zero line, plain SVG 1.1. Output is a
/// pure function of the input.
std::string render_line_chart(const std::string& title, const std::vector<Panel>& panels);

}  // namespace svarkit::app
