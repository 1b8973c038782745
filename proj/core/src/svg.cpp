#include "mod1/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace mod1 {

namespace {

constexpr double kClamp = 1e-12;
constexpr int kWidth = 720, kHeight = 480;
constexpr int kLeft = 70, kRight = 160, kTop = 40, kBottom = 50;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

void write_line_plot(std::ostream& os, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::vector<SvgSeries>& series, bool log_y) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (std::isnan(s.x[i]) || std::isnan(s.y[i])) continue;
      double y = s.y[i];
      if (log_y) y = std::log10(std::max(y, kClamp));
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (!(xmin < xmax)) { xmin -= 0.5; xmax += 0.5; }
  if (!(ymin < ymax)) { ymin -= 0.5; ymax += 0.5; }

  const double px = static_cast<double>(kWidth - kLeft - kRight) / (xmax - xmin);
  const double py = static_cast<double>(kHeight - kTop - kBottom) / (ymax - ymin);
  auto sx = [&](double x) { return kLeft + (x - xmin) * px; };
  auto sy = [&](double y) { return kHeight - kBottom - (y - ymin) * py; };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
     << "\" height=\"" << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
     << title << "</text>\n";

  // frame + ticks
  os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kWidth - kLeft - kRight
     << "\" height=\"" << kHeight - kTop - kBottom << "\" fill=\"none\" stroke=\"black\"/>\n";
  const int ticks = 5;
  for (int t = 0; t <= ticks; ++t) {
    const double fx = xmin + (xmax - xmin) * t / ticks;
    const double fy = ymin + (ymax - ymin) * t / ticks;
    os << "<line x1=\"" << fmt(sx(fx)) << "\" y1=\"" << kHeight - kBottom << "\" x2=\""
       << fmt(sx(fx)) << "\" y2=\"" << kHeight - kBottom + 5 << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << fmt(sx(fx)) << "\" y=\"" << kHeight - kBottom + 18
       << "\" text-anchor=\"middle\">" << fmt(fx) << "</text>\n";
    os << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << fmt(sy(fy)) << "\" x2=\"" << kLeft
       << "\" y2=\"" << fmt(sy(fy)) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << kLeft - 8 << "\" y=\"" << fmt(sy(fy) + 4)
       << "\" text-anchor=\"end\">" << (log_y ? "1e" + fmt(fy) : fmt(fy)) << "</text>\n";
  }
  os << "<text x=\"" << kLeft + (kWidth - kLeft - kRight) / 2 << "\" y=\"" << kHeight - 12
     << "\" text-anchor=\"middle\">" << x_label << "</text>\n";
  os << "<text x=\"16\" y=\"" << kTop + (kHeight - kTop - kBottom) / 2
     << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << kTop + (kHeight - kTop - kBottom) / 2 << ")\">" << y_label << "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kPalette[k % (sizeof kPalette / sizeof kPalette[0])];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (std::isnan(s.x[i]) || std::isnan(s.y[i])) continue;
      double y = s.y[i];
      if (log_y) y = std::log10(std::max(y, kClamp));
      os << fmt(sx(s.x[i])) << "," << fmt(sy(y)) << " ";
    }
    os << "\"/>\n";
    const double ly = kTop + 16.0 + 18.0 * static_cast<double>(k);
    os << "<line x1=\"" << kWidth - kRight + 10 << "\" y1=\"" << fmt(ly - 4) << "\" x2=\""
       << kWidth - kRight + 34 << "\" y2=\"" << fmt(ly - 4) << "\" stroke=\"" << color
       << "\" stroke-width=\"1.5\"/>\n";
    os << "<text x=\"" << kWidth - kRight + 40 << "\" y=\"" << fmt(ly) << "\">" << s.label
       << "</text>\n";
  }
  os << "</svg>\n";
}

}  // namespace mod1
