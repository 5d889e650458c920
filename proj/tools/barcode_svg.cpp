#include "barcode_svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "socioplex/errors.hpp"

namespace socioplex::cli {

namespace {

constexpr int kMarginLeft = 60;
constexpr int kMarginRight = 30;
constexpr int kPanelHeader = 28;
constexpr int kPanelFooter = 34;
constexpr int kPanelGap = 12;
constexpr int kTicks = 5;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  std::string s(buf);
  // trim trailing zeros for compact, stable output
  while (s.size() > 1 && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  if (s == "-0") s = "0";
  return s;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
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

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

double axis_end(const PersistenceDiagram& d, double requested) {
  if (requested > 0.0) return requested;
  double hi = 0.0;
  for (const auto& i : d.intervals) {
    hi = std::max(hi, i.birth);
    if (!i.essential()) hi = std::max(hi, i.death);
  }
  return hi > 0.0 ? hi * 1.1 : 1.0;
}

}  // namespace

std::string render_barcode_svg(const PersistenceDiagram& d, const SvgOptions& options) {
  if (d.empty() && !options.allow_empty)
    throw InvalidArgument("empty diagram; nothing to plot (allow_empty not set)");

  std::map<int, std::vector<Interval>> panels;
  for (const auto& i : d.intervals) panels[i.dim].push_back(i);
  for (auto& [dim, bars] : panels)
    std::stable_sort(bars.begin(), bars.end(), [](const Interval& a, const Interval& b) {
      if (a.birth != b.birth) return a.birth < b.birth;
      return a.death < b.death;
    });

  const double scale_end = axis_end(d, options.max_scale);
  const int plot_width = options.width - kMarginLeft - kMarginRight;
  const auto x_of = [&](double v) {
    return kMarginLeft + plot_width * std::clamp(v / scale_end, 0.0, 1.0);
  };

  // An empty diagram still gets one axis panel.
  std::vector<std::pair<int, const std::vector<Interval>*>> layout;
  static const std::vector<Interval> kNoBars;
  for (const auto& [dim, bars] : panels) layout.emplace_back(dim, &bars);
  if (layout.empty()) layout.emplace_back(-1, &kNoBars);

  int height = 30;
  for (const auto& [dim, bars] : layout)
    height += kPanelHeader + options.bar_spacing * static_cast<int>(std::max<std::size_t>(bars->size(), 1)) +
              kPanelFooter + kPanelGap;

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << options.width << ' ' << height << "\">\n"
      << "  <defs>\n"
      << "    <marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"6\" "
         "markerHeight=\"6\" orient=\"auto\">\n"
      << "      <path d=\"M0,0 L10,5 L0,10 z\" fill=\"black\"/>\n"
      << "    </marker>\n"
      << "  </defs>\n"
      << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "  <text x=\"" << options.width / 2 << "\" y=\"20\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"14\">"
      << escape_xml(options.title) << "</text>\n";

  int top = 30;
  for (const auto& [dim, bars] : layout) {
    const int rows = static_cast<int>(std::max<std::size_t>(bars->size(), 1));
    const int axis_y = top + kPanelHeader + options.bar_spacing * rows;
    svg << "  <g class=\"panel\"" << (dim >= 0 ? " data-dim=\"" + std::to_string(dim) + "\"" : "")
        << ">\n";
    if (dim >= 0)
      svg << "    <text x=\"" << kMarginLeft << "\" y=\"" << top + 16
          << "\" font-family=\"sans-serif\" font-size=\"12\">H" << dim << "</text>\n";

    int row = 0;
    for (const auto& bar : *bars) {
      const double y = top + kPanelHeader + options.bar_spacing * (row + 0.5);
      svg << "    <line class=\"bar dim-" << dim << (bar.essential() ? " essential" : "")
          << "\" x1=\"" << num(x_of(bar.birth)) << "\" y1=\"" << num(y) << "\" x2=\""
          << num(bar.essential() ? x_of(scale_end) : x_of(bar.death)) << "\" y2=\"" << num(y)
          << "\" stroke=\"black\" stroke-width=\"" << std::max(1, options.bar_spacing / 2) << "\""
          << (bar.essential() ? " marker-end=\"url(#arrow)\"" : "") << "/>\n";
      ++row;
    }

    svg << "    <line class=\"axis\" x1=\"" << kMarginLeft << "\" y1=\"" << axis_y << "\" x2=\""
        << kMarginLeft + plot_width << "\" y2=\"" << axis_y << "\" stroke=\"gray\"/>\n";
    for (int t = 0; t <= kTicks; ++t) {
      const double v = scale_end * t / kTicks;
      const double x = x_of(v);
      svg << "    <line class=\"tick\" x1=\"" << num(x) << "\" y1=\"" << axis_y << "\" x2=\""
          << num(x) << "\" y2=\"" << axis_y + 4 << "\" stroke=\"gray\"/>\n"
          << "    <text x=\"" << num(x) << "\" y=\"" << axis_y + 16
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">"
          << tick_label(v) << "</text>\n";
    }
    svg << "  </g>\n";
    top = axis_y + kPanelFooter + kPanelGap;
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace socioplex::cli
