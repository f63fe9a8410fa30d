#include "treesearch/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>

#include "treesearch/tree_dump.hpp"

namespace treesearch {

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 420;
constexpr double kLeft = 64.0;
constexpr double kRight = 616.0;
constexpr double kTop = 36.0;
constexpr double kBottom = 360.0;

std::string f2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

struct Series {
  Variant variant;
  std::vector<double> x;      // screen x per budget
  std::vector<double> mean;   // screen y of the mean
  std::vector<double> upper;  // screen y of mean + stderr
  std::vector<double> lower;  // screen y of mean - stderr
};

}  // namespace

const char* variant_color(Variant variant) {
  switch (variant) {
    case Variant::Baseline:
      return "#d62728";
    case Variant::TreeUncertainty:
      return "#1f77b4";
    case Variant::TreeUncertaintyLoops:
      return "#2ca02c";
  }
  throw std::invalid_argument("unknown variant");
}

std::string render_sweep_svg(const std::string& env_name,
                             const std::vector<SweepRow>& rows) {
  if (rows.empty()) throw std::invalid_argument("plot: no rows");
  for (const SweepRow& r : rows)
    if (r.env != env_name)
      throw std::invalid_argument("plot: row for env '" + r.env +
                                  "' passed to chart for '" + env_name + "'");

  std::set<int> budget_set;
  double y_min = 0.0, y_max = 0.0;
  bool first = true;
  for (const SweepRow& r : rows) {
    budget_set.insert(r.budget);
    const double lo = r.mean_return - r.stderr_return;
    const double hi = r.mean_return + r.stderr_return;
    y_min = first ? lo : std::min(y_min, lo);
    y_max = first ? hi : std::max(y_max, hi);
    first = false;
  }
  if (y_max - y_min < 1e-9) {
    y_min -= 0.5;
    y_max += 0.5;
  } else {
    const double pad = 0.05 * (y_max - y_min);
    y_min -= pad;
    y_max += pad;
  }

  const std::vector<int> budgets(budget_set.begin(), budget_set.end());
  const double x_lo = std::log10(static_cast<double>(budgets.front()));
  const double x_hi = std::log10(static_cast<double>(budgets.back()));
  const double x_span = std::max(x_hi - x_lo, 1e-9);

  auto sx = [&](int budget) {
    const double t = (std::log10(static_cast<double>(budget)) - x_lo) / x_span;
    return budgets.size() == 1 ? (kLeft + kRight) / 2.0
                               : kLeft + t * (kRight - kLeft);
  };
  auto sy = [&](double value) {
    const double t = (value - y_min) / (y_max - y_min);
    return kBottom - t * (kBottom - kTop);
  };

  std::vector<Series> series;
  for (Variant v : {Variant::Baseline, Variant::TreeUncertainty,
                    Variant::TreeUncertaintyLoops}) {
    Series s;
    s.variant = v;
    for (int budget : budgets) {
      for (const SweepRow& r : rows) {
        if (r.variant != v || r.budget != budget) continue;
        s.x.push_back(sx(budget));
        s.mean.push_back(sy(r.mean_return));
        s.upper.push_back(sy(r.mean_return + r.stderr_return));
        s.lower.push_back(sy(r.mean_return - r.stderr_return));
        break;
      }
    }
    if (!s.x.empty()) series.push_back(std::move(s));
  }

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(kWidth) + "\" height=\"" + std::to_string(kHeight) +
         "\" viewBox=\"0 0 " + std::to_string(kWidth) + " " +
         std::to_string(kHeight) + "\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(kWidth) +
         "\" height=\"" + std::to_string(kHeight) + "\" fill=\"white\"/>\n";
  svg += "<text x=\"" + f2((kLeft + kRight) / 2.0) +
         "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"14\">" +
         env_name + "</text>\n";

  // Axes.
  svg += "<line x1=\"" + f2(kLeft) + "\" y1=\"" + f2(kBottom) + "\" x2=\"" +
         f2(kRight) + "\" y2=\"" + f2(kBottom) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg += "<line x1=\"" + f2(kLeft) + "\" y1=\"" + f2(kTop) + "\" x2=\"" +
         f2(kLeft) + "\" y2=\"" + f2(kBottom) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";

  for (int budget : budgets) {
    const double x = sx(budget);
    svg += "<line x1=\"" + f2(x) + "\" y1=\"" + f2(kBottom) + "\" x2=\"" +
           f2(x) + "\" y2=\"" + f2(kBottom + 5.0) +
           "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + f2(x) + "\" y=\"" + f2(kBottom + 20.0) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">" +
           std::to_string(budget) + "</text>\n";
  }
  for (int i = 0; i <= 4; ++i) {
    const double value = y_min + (y_max - y_min) * i / 4.0;
    const double y = sy(value);
    svg += "<line x1=\"" + f2(kLeft - 5.0) + "\" y1=\"" + f2(y) + "\" x2=\"" +
           f2(kLeft) + "\" y2=\"" + f2(y) +
           "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + f2(kLeft - 9.0) + "\" y=\"" + f2(y + 4.0) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">" +
           format_g6(value) + "</text>\n";
  }
  svg += "<text x=\"" + f2((kLeft + kRight) / 2.0) + "\" y=\"" +
         f2(kBottom + 40.0) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\">trace budget</text>\n";
  svg += "<text x=\"16\" y=\"" + f2((kTop + kBottom) / 2.0) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\" transform=\"rotate(-90 16 " +
         f2((kTop + kBottom) / 2.0) + ")\">mean return</text>\n";

  for (const Series& s : series) {
    const char* color = variant_color(s.variant);
    if (s.x.size() > 1) {
      std::string pts;
      for (std::size_t i = 0; i < s.x.size(); ++i)
        pts += f2(s.x[i]) + "," + f2(s.upper[i]) + " ";
      for (std::size_t i = s.x.size(); i-- > 0;)
        pts += f2(s.x[i]) + "," + f2(s.lower[i]) + " ";
      pts.pop_back();
      svg += std::string("<polygon points=\"") + pts + "\" fill=\"" + color +
             "\" fill-opacity=\"0.15\" stroke=\"none\"/>\n";
    }
    std::string pts;
    for (std::size_t i = 0; i < s.x.size(); ++i)
      pts += f2(s.x[i]) + "," + f2(s.mean[i]) + " ";
    pts.pop_back();
    svg += std::string("<polyline points=\"") + pts + "\" fill=\"none\" " +
           "stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    for (std::size_t i = 0; i < s.x.size(); ++i)
      svg += "<circle cx=\"" + f2(s.x[i]) + "\" cy=\"" + f2(s.mean[i]) +
             "\" r=\"3\" fill=\"" + color + "\"/>\n";
  }

  double legend_y = kTop + 10.0;
  for (const Series& s : series) {
    const char* color = variant_color(s.variant);
    svg += "<line x1=\"" + f2(kRight - 110.0) + "\" y1=\"" + f2(legend_y) +
           "\" x2=\"" + f2(kRight - 86.0) + "\" y2=\"" + f2(legend_y) +
           "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + f2(kRight - 80.0) + "\" y=\"" + f2(legend_y + 4.0) +
           "\" font-family=\"sans-serif\" font-size=\"11\">" +
           to_string(s.variant) + "</text>\n";
    legend_y += 16.0;
  }

  svg += "</svg>\n";
  return svg;
}

std::map<std::string, std::string> render_sweep_svgs(
    const std::vector<SweepRow>& rows) {
  std::map<std::string, std::vector<SweepRow>> by_env;
  for (const SweepRow& r : rows) by_env[r.env].push_back(r);
  std::map<std::string, std::string> out;
  for (const auto& [env_name, env_rows] : by_env)
    out[env_name] = render_sweep_svg(env_name, env_rows);
  return out;
}

}  // namespace treesearch
