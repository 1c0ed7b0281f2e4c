#include "report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace edgecache {

namespace {

std::string num(double v, const char* spec = "%.9g") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

const char* policy_color(Policy p) {
  switch (p) {
    case Policy::kGroundTruth: return "#1f77b4";
    case Policy::kRandom: return "#ff7f0e";
    case Policy::kCf: return "#2ca02c";
    case Policy::kTl: return "#d62728";
  }
  return "#000000";
}

const char* policy_label(Policy p) {
  switch (p) {
    case Policy::kGroundTruth: return "Ground Truth";
    case Policy::kRandom: return "Random";
    case Policy::kCf: return "Collaborative Filtering";
    case Policy::kTl: return "Transfer Learning";
  }
  return "?";
}

}  // namespace

bool emit_csv(const SweepResult& result, const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // binary keeps line endings identical everywhere
  if (!out) throw std::runtime_error("emit_csv: cannot open " + path);
  out << "axis,value,policy,metric,mean,stderr,realizations\n";
  for (size_t g = 0; g < result.grid.size(); ++g) {
    for (size_t pi = 0; pi < result.policies.size(); ++pi) {
      const SweepCell& cell = result.cell(g, pi);
      const char* policy = policy_name(result.policies[pi]);
      out << result.axis << ',' << num(result.grid[g]) << ',' << policy << ",eta,"
          << num(cell.eta_mean) << ',' << num(cell.eta_stderr) << ',' << result.realizations << '\n';
      out << result.axis << ',' << num(result.grid[g]) << ',' << policy << ",rho,"
          << num(cell.rho_mean) << ',' << num(cell.rho_stderr) << ',' << result.realizations << '\n';
    }
  }
  if (!out) throw std::runtime_error("emit_csv: write failed for " + path);
  return !result.grid.empty();
}

void emit_plot(const SweepResult& result, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit_plot: cannot open " + path);

  constexpr double kPanelW = 380.0, kPanelH = 310.0, kPanelY = 45.0;
  const double panel_x[2] = {70.0, 570.0};
  const char* panel_title[2] = {"Satisfaction ratio", "Backhaul load"};

  double x_lo = 0.0, x_hi = 1.0;
  if (!result.plot_values.empty()) {
    x_lo = *std::min_element(result.plot_values.begin(), result.plot_values.end());
    x_hi = *std::max_element(result.plot_values.begin(), result.plot_values.end());
  }
  if (x_hi <= x_lo) x_hi = x_lo + 1.0;  // degenerate single-point grid
  auto map_x = [&](double v, int panel) {
    return panel_x[panel] + (v - x_lo) / (x_hi - x_lo) * kPanelW;
  };
  auto map_y = [&](double v) { return kPanelY + kPanelH - std::clamp(v, 0.0, 1.0) * kPanelH; };

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" height=\"470\" "
         "viewBox=\"0 0 1000 470\">\n"
      << "<rect width=\"1000\" height=\"470\" fill=\"white\"/>\n";

  for (int panel = 0; panel < 2; ++panel) {
    const double x0 = panel_x[panel];
    out << "<rect x=\"" << num(x0, "%.2f") << "\" y=\"" << num(kPanelY, "%.2f") << "\" width=\""
        << num(kPanelW, "%.2f") << "\" height=\"" << num(kPanelH, "%.2f")
        << "\" fill=\"none\" stroke=\"#444444\"/>\n";
    out << "<text x=\"" << num(x0 + kPanelW / 2, "%.2f")
        << "\" y=\"30\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
        << panel_title[panel] << "</text>\n";
    out << "<text x=\"" << num(x0 + kPanelW / 2, "%.2f")
        << "\" y=\"400\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << result.axis_label << "</text>\n";

    for (int tick = 0; tick <= 5; ++tick) {  // y ticks at 0, 0.2, ... 1 with grid lines
      const double v = tick / 5.0;
      const double y = map_y(v);
      out << "<line x1=\"" << num(x0, "%.2f") << "\" y1=\"" << num(y, "%.2f") << "\" x2=\""
          << num(x0 + kPanelW, "%.2f") << "\" y2=\"" << num(y, "%.2f")
          << "\" stroke=\"#dddddd\"/>\n";
      out << "<text x=\"" << num(x0 - 8, "%.2f") << "\" y=\"" << num(y + 4, "%.2f")
          << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << num(v, "%.1f")
          << "</text>\n";
    }
    for (int tick = 0; tick <= 4; ++tick) {  // x ticks
      const double v = x_lo + (x_hi - x_lo) * tick / 4.0;
      const double x = map_x(v, panel);
      out << "<line x1=\"" << num(x, "%.2f") << "\" y1=\"" << num(kPanelY + kPanelH, "%.2f")
          << "\" x2=\"" << num(x, "%.2f") << "\" y2=\"" << num(kPanelY + kPanelH + 5, "%.2f")
          << "\" stroke=\"#444444\"/>\n";
      out << "<text x=\"" << num(x, "%.2f") << "\" y=\"" << num(kPanelY + kPanelH + 18, "%.2f")
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
          << num(v, "%.3g") << "</text>\n";
    }

    for (size_t pi = 0; pi < result.policies.size(); ++pi) {
      const char* color = policy_color(result.policies[pi]);
      std::string points;
      for (size_t g = 0; g < result.grid.size(); ++g) {
        const SweepCell& cell = result.cell(g, pi);
        const double mean = panel == 0 ? cell.eta_mean : cell.rho_mean;
        const double err = panel == 0 ? cell.eta_stderr : cell.rho_stderr;
        const double x = map_x(result.plot_values[g], panel);
        points += num(x, "%.2f") + "," + num(map_y(mean), "%.2f") + " ";
        out << "<line x1=\"" << num(x, "%.2f") << "\" y1=\"" << num(map_y(mean - err), "%.2f")
            << "\" x2=\"" << num(x, "%.2f") << "\" y2=\"" << num(map_y(mean + err), "%.2f")
            << "\" stroke=\"" << color << "\" stroke-width=\"1\"/>\n";
        out << "<circle cx=\"" << num(x, "%.2f") << "\" cy=\"" << num(map_y(mean), "%.2f")
            << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
      }
      if (!points.empty()) points.pop_back();
      out << "<polyline points=\"" << points << "\" fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"1.5\"/>\n";
    }
  }

  double legend_x = 120.0;
  for (size_t pi = 0; pi < result.policies.size(); ++pi) {
    const char* color = policy_color(result.policies[pi]);
    out << "<line x1=\"" << num(legend_x, "%.2f") << "\" y1=\"440\" x2=\""
        << num(legend_x + 24, "%.2f") << "\" y2=\"440\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << num(legend_x + 30, "%.2f")
        << "\" y=\"444\" font-family=\"sans-serif\" font-size=\"12\">"
        << policy_label(result.policies[pi]) << "</text>\n";
    legend_x += 60.0 + 7.0 * std::string(policy_label(result.policies[pi])).size();
  }

  out << "</svg>\n";
  if (!out) throw std::runtime_error("emit_plot: write failed for " + path);
}

}  // namespace edgecache
