#ifndef SKOROKHOD_RENDER_HPP
#define SKOROKHOD_RENDER_HPP

#include <algorithm>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "skorokhod/document.hpp"
#include "skorokhod/turbo.hpp"

namespace skorokhod {

/// Rows (s, value) at every node and at s = k/(samples-1). A jump produces
/// two rows with the same s: the left limit first, then the value.
inline std::string visualization_csv(const Turbofunction& x, std::size_t samples = 1024) {
  const auto v = visualize(x);
  std::vector<double> grid = v.times();
  for (std::size_t k = 0; k < samples; ++k) grid.push_back(static_cast<double>(k) / (samples - 1));
  grid = detail::merge_times(std::move(grid));
  std::string out = "s,value\n";
  for (double s : grid) {
    if (s > 0.0 && v.has_jump_at(s)) out += detail::fmt(s) + "," + detail::fmt(v.left_limit(s)) + "\n";
    out += detail::fmt(s) + "," + detail::fmt(v(s)) + "\n";
  }
  return out;
}

struct SvgSeries {
  std::string label;
  CadlagFunction f;
  std::string color = "#1f77b4";
};

namespace detail {

class SvgCanvas {
 public:
  SvgCanvas(double x0, double y0, double w, double h, double vmin, double vmax)
      : x0_(x0), y0_(y0), w_(w), h_(h), vmin_(vmin), vmax_(vmax) {}

  double px(double s) const { return x0_ + s * w_; }
  double py(double v) const { return y0_ + h_ - (v - vmin_) / (vmax_ - vmin_) * h_; }

  std::string frame() const {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" fill=\"none\" stroke=\"#999\"/>\n",
                  x0_, y0_, w_, h_);
    return buf;
  }

  /// One polyline per continuous piece, so jumps show as gaps.
  std::string graph(const CadlagFunction& f, const std::string& color, double width = 1.5) const {
    std::string out;
    const auto& nd = f.nodes();
    std::string pts;
    auto add = [&](double s, double v) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(s), py(v));
      pts += buf;
    };
    auto flush = [&]() {
      if (!pts.empty()) {
        out += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"" + fmt(width) + "\" points=\"" +
               pts + "\"/>\n";
      }
      pts.clear();
    };
    add(nd[0].t, nd[0].right);
    for (std::size_t k = 1; k < nd.size(); ++k) {
      add(nd[k].t, nd[k].left);
      if (nd[k].jumps()) {
        flush();
        add(nd[k].t, nd[k].right);
      }
    }
    flush();
    return out;
  }

  std::string dashed_segment(double s, double a, double b, const std::string& color) const {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"%s\" stroke-width=\"2\" "
                  "stroke-dasharray=\"6,4\"/>\n",
                  px(s), py(a), px(s), py(b), color.c_str());
    return buf;
  }

 private:
  double x0_, y0_, w_, h_, vmin_, vmax_;
};

inline std::pair<double, double> value_range(const std::vector<SvgSeries>& series,
                                             const std::vector<Instanton>& inst) {
  double lo = 0.0, hi = 1.0;
  bool first = true;
  auto take = [&](double a, double b) {
    lo = first ? a : std::min(lo, a);
    hi = first ? b : std::max(hi, b);
    first = false;
  };
  for (const auto& s : series) take(s.f.min_value(), s.f.max_value());
  for (const auto& i : inst) take(i.value_min, i.value_max);
  if (hi - lo < 1e-12) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad};
}

inline std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

inline std::string text(double x, double y, const std::string& s, int size = 12) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "<text x=\"%.2f\" y=\"%.2f\" font-size=\"%d\" font-family=\"sans-serif\">", x, y,
                size);
  return buf + s + "</text>\n";
}

}  // namespace detail

/// Plot of several functions on [0,1] plus dashed vertical segments for the
/// given instantons and a side panel with each instanton's trace.
inline std::string svg_plot(const std::vector<SvgSeries>& series, const std::vector<Instanton>& inst,
                            const std::string& title) {
  const double main_w = 560, h = 320, margin = 40;
  const double side_w = inst.empty() ? 0.0 : 220.0;
  const double width = main_w + 2 * margin + (inst.empty() ? 0.0 : side_w + margin);
  const double height = h + 2 * margin;
  const auto [vmin, vmax] = detail::value_range(series, inst);
  const detail::SvgCanvas main(margin, margin, main_w, h, vmin, vmax);

  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::fmt(width) + "\" height=\"" +
         detail::fmt(height) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += detail::text(margin, 24, title, 14);
  out += main.frame();
  out += detail::text(margin - 4, margin + h + 16, "0");
  out += detail::text(margin + main_w - 4, margin + h + 16, "1");
  out += detail::text(4, main.py(vmax) + 12, detail::short_num(vmax), 10);
  out += detail::text(4, main.py(vmin), detail::short_num(vmin), 10);
  double ly = margin + 14;
  for (const auto& s : series) {
    out += "<g class=\"series\">\n" + main.graph(s.f, s.color) + "</g>\n";
    out += "<text x=\"" + detail::fmt(margin + main_w - 120) + "\" y=\"" + detail::fmt(ly) +
           "\" font-size=\"11\" font-family=\"sans-serif\" fill=\"" + s.color + "\">" + s.label + "</text>\n";
    ly += 14;
  }
  for (std::size_t k = 0; k < inst.size(); ++k) {
    const auto& i = inst[k];
    out += "<g class=\"instanton\">\n" + main.dashed_segment(i.s, i.value_min, i.value_max, "#d62728") + "</g>\n";
    // Side panel: trace of F along the flat piece, rescaled to [0,1].
    const double ph = std::min(h, (h - 10.0 * (inst.size() - 1)) / inst.size());
    const detail::SvgCanvas panel(main_w + 2 * margin, margin + k * (ph + 10.0), side_w, ph, vmin, vmax);
    out += panel.frame();
    out += "<g class=\"trace\">\n" + panel.graph(i.trace, "#d62728") + "</g>\n";
    out += detail::text(main_w + 2 * margin + 4, margin + k * (ph + 10.0) + 12, "instanton s=" + detail::short_num(i.s), 10);
  }
  out += "</svg>\n";
  return out;
}

inline std::string visualization_svg(const Turbofunction& x, const std::string& title) {
  return svg_plot({{"visualization", visualize(x)}}, instantons(x), title);
}

}  // namespace skorokhod

#endif  // SKOROKHOD_RENDER_HPP
