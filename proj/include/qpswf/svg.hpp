#pragma once

// Line-plot overlay written as standalone SVG, one <polyline> per series.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace qpswf::svg {

struct Series {
  std::string label;
  std::string color;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotOptions {
  std::string title;
  std::string x_label = "x";
  std::string y_label;
  bool log_x = false;
  int width = 640;
  int height = 420;
};

namespace detail {

inline std::string escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

inline std::string tick(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

}  // namespace detail

inline std::string render(const std::vector<Series>& series, const PlotOptions& opt) {
  const double left = 70, right = 20, top = 40, bottom = 50;
  const double pw = opt.width - left - right;
  const double ph = opt.height - top - bottom;
  auto tx = [&](double x) { return opt.log_x ? std::log10(x) : x; };

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const Series& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.y[i]) || (opt.log_x && !(s.x[i] > 0))) continue;
      xmin = std::min(xmin, tx(s.x[i]));
      xmax = std::max(xmax, tx(s.x[i]));
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  }
  if (!std::isfinite(xmin)) xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymin -= 0.5, ymax += 0.5;
  const double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;
  auto px = [&](double x) { return left + (tx(x) - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return top + (ymax - y) / (ymax - ymin) * ph; };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width << "\" height=\"" << opt.height
      << "\" viewBox=\"0 0 " << opt.width << ' ' << opt.height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << detail::num(opt.width / 2.0) << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
      << detail::escape(opt.title) << "</text>\n"
      << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int i = 0; i <= 4; ++i) {
    const double fy = ymin + (ymax - ymin) * i / 4.0;
    const double fx = xmin + (xmax - xmin) * i / 4.0;
    out << "<text x=\"" << detail::num(left - 6) << "\" y=\"" << detail::num(py(fy) + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << detail::tick(fy) << "</text>\n";
    const double label_x = opt.log_x ? std::pow(10.0, fx) : fx;
    out << "<text x=\"" << detail::num(left + (fx - xmin) / (xmax - xmin) * pw) << "\" y=\"" << detail::num(top + ph + 16)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << detail::tick(label_x) << "</text>\n";
  }
  out << "<text x=\"" << detail::num(left + pw / 2) << "\" y=\"" << detail::num(opt.height - 10.0)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << detail::escape(opt.x_label) << "</text>\n";

  double legend_y = top + 16;
  for (const Series& s : series) {
    out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.y[i]) || (opt.log_x && !(s.x[i] > 0))) continue;
      out << (first ? "" : " ") << detail::num(px(s.x[i])) << ',' << detail::num(py(s.y[i]));
      first = false;
    }
    out << "\"><title>" << detail::escape(s.label) << "</title></polyline>\n";
    out << "<text x=\"" << detail::num(left + pw - 8) << "\" y=\"" << detail::num(legend_y)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << s.color << "\">"
        << detail::escape(s.label) << "</text>\n";
    legend_y += 16;
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace qpswf::svg
