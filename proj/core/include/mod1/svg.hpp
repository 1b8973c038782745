#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mod1 {

struct SvgSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Static line plot built from path/text primitives only. With log_y the
/// y axis is log10 and values below 1e-12 are clamped to 1e-12. NaN points
/// are skipped. Output is byte-deterministic for identical input.
void write_line_plot(std::ostream& os, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::vector<SvgSeries>& series, bool log_y);

}  // namespace mod1
