#include "layerctx/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>

#include "layerctx/errors.hpp"

namespace layerctx {

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw Error("format_double: value does not fit");
  return std::string(buf, ptr);
}

std::string series_csv(const std::vector<const BandwidthSeries*>& runs) {
  std::string out =
      "t,bandwidth_bytes_per_sec,setpoint,high_sessions_per_sec,low_sessions_per_sec,run\n";
  for (const BandwidthSeries* series : runs) {
    if (!series) continue;
    for (const WindowRow& row : series->rows) {
      out += format_double(row.t);
      out += ',';
      out += format_double(row.bandwidth);
      out += ',';
      out += format_double(row.setpoint);
      out += ',';
      out += format_double(row.high_rate);
      out += ',';
      out += format_double(row.low_rate);
      out += ',';
      out += series->run;
      out += '\n';
    }
  }
  return out;
}

std::string bench_csv(const std::vector<BenchReport>& reports) {
  std::string out = "bench,variant,param,per_call_ns,mean_ms,reps\n";
  for (const BenchReport& r : reports) {
    out += r.bench;
    out += ',';
    out += r.variant;
    out += ',';
    out += std::to_string(r.param);
    out += ',';
    out += format_double(r.per_call_ns());
    out += ',';
    out += format_double(r.mean_seconds() * 1e3);
    out += ',';
    out += std::to_string(r.rep_seconds.size());
    out += '\n';
  }
  return out;
}

void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open: " + path);
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return content;
}

namespace {

// Minimal line-chart scaffolding; enough for the emitted figures, not a
// general plotting layer. Coordinates are absolute so several panels can
// share one canvas.
struct ChartFrame {
  double width = 960;
  double left = 80, right = 24;
  double plot_top = 40, plot_bottom = 460;
  double x_min = 0, x_max = 1, y_min = 0, y_max = 1;

  double px(double x) const {
    return left + (x - x_min) / (x_max - x_min) * (width - left - right);
  }
  double py(double y) const {
    return plot_bottom - (y - y_min) / (y_max - y_min) * (plot_bottom - plot_top);
  }
};

double nice_step(double span, int target_ticks) {
  const double raw = span / target_ticks;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (raw <= m * mag) return m * mag;
  return 10.0 * mag;
}

std::string svg_text(double x, double y, std::string_view anchor, int size,
                     std::string_view text, std::string_view extra = "") {
  return "<text x=\"" + format_double(x) + "\" y=\"" + format_double(y) +
         "\" text-anchor=\"" + std::string(anchor) +
         "\" font-family=\"sans-serif\" font-size=\"" + std::to_string(size) + "\"" +
         std::string(extra) + ">" + std::string(text) + "</text>\n";
}

std::string svg_line(double x1, double y1, double x2, double y2, std::string_view stroke,
                     std::string_view extra = "") {
  return "<line x1=\"" + format_double(x1) + "\" y1=\"" + format_double(y1) + "\" x2=\"" +
         format_double(x2) + "\" y2=\"" + format_double(y2) + "\" stroke=\"" +
         std::string(stroke) + "\"" + std::string(extra) + "/>\n";
}

std::string svg_axes(const ChartFrame& f, std::string_view x_label, std::string_view y_label,
                     double y_tick_scale = 1.0) {
  std::string s;
  const double x0 = f.left, x1 = f.width - f.right;
  const double y0 = f.plot_bottom, y1 = f.plot_top;
  s += svg_line(x0, y0, x1, y0, "black");
  s += svg_line(x0, y0, x0, y1, "black");

  const double xs = nice_step(f.x_max - f.x_min, 8);
  for (double x = std::ceil(f.x_min / xs) * xs; x <= f.x_max + 1e-9; x += xs) {
    const double px = f.px(x);
    s += svg_line(px, y0, px, y0 + 5, "black");
    s += svg_text(px, y0 + 20, "middle", 12, format_double(x));
  }
  const double ys = nice_step(f.y_max - f.y_min, 6);
  for (double y = std::ceil(f.y_min / ys) * ys; y <= f.y_max + 1e-9; y += ys) {
    const double py = f.py(y);
    s += svg_line(x0 - 5, py, x0, py, "black");
    s += svg_line(x0, py, x1, py, "#dddddd", " stroke-width=\"0.5\"");
    s += svg_text(x0 - 8, py + 4, "end", 12, format_double(y / y_tick_scale));
  }
  s += svg_text((x0 + x1) / 2, y0 + 40, "middle", 13, x_label);
  const std::string rot =
      " transform=\"rotate(-90 18 " + format_double((y0 + y1) / 2) + ")\"";
  s += svg_text(18, (y0 + y1) / 2, "middle", 13, y_label, rot);
  return s;
}

std::string svg_polyline(const std::vector<std::pair<double, double>>& pts,
                         const ChartFrame& f, std::string_view color, double width = 1.5,
                         std::string_view dash = "") {
  if (pts.empty()) return "";
  std::string s = "<polyline fill=\"none\" stroke=\"" + std::string(color) +
                  "\" stroke-width=\"" + format_double(width) + "\"";
  if (!dash.empty()) s += " stroke-dasharray=\"" + std::string(dash) + "\"";
  s += " points=\"";
  for (const auto& [x, y] : pts)
    s += format_double(f.px(x)) + "," + format_double(f.py(y)) + " ";
  s.pop_back();
  s += "\"/>\n";
  return s;
}

std::string svg_legend_entry(const ChartFrame& f, int slot, std::string_view color,
                             std::string_view label, std::string_view dash = "") {
  const double x = f.left + 16;
  const double y = f.plot_top + 10 + slot * 18;
  std::string s = svg_line(x, y, x + 28, y, color,
                           dash.empty() ? " stroke-width=\"2\""
                                        : " stroke-width=\"2\" stroke-dasharray=\"" +
                                              std::string(dash) + "\"");
  s += svg_text(x + 34, y + 4, "start", 12, label);
  return s;
}

std::vector<std::pair<double, double>> bandwidth_points(const BandwidthSeries& s) {
  std::vector<std::pair<double, double>> pts;
  pts.reserve(s.rows.size());
  for (const WindowRow& row : s.rows) pts.emplace_back(row.t, row.bandwidth);
  return pts;
}

}  // namespace

std::string comparison_svg(const ComparisonResult& result) {
  std::vector<std::pair<const BandwidthSeries*, const char*>> runs;
  if (result.a) runs.push_back({&*result.a, "#d62728"});
  if (result.b) runs.push_back({&*result.b, "#1f77b4"});
  if (result.c) runs.push_back({&*result.c, "#2ca02c"});

  const double width = 960, height = 880;
  ChartFrame top{width, 80, 24, 48, 420, 0, 1, 0, 1};
  for (const auto& [series, color] : runs) {
    for (const WindowRow& row : series->rows) {
      top.x_max = std::max(top.x_max, row.t + 1);
      top.y_max = std::max({top.y_max, row.bandwidth, row.setpoint});
    }
  }
  top.y_max *= 1.08;

  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                  format_double(width) + "\" height=\"" + format_double(height) +
                  "\" viewBox=\"0 0 " + format_double(width) + " " + format_double(height) +
                  "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += svg_text(width / 2, 28, "middle", 16, "bandwidth per measurement window");
  s += svg_axes(top, "virtual time [s]", "bandwidth [MB/s]", 1e6);
  for (const auto& [series, color] : runs)
    s += svg_polyline(bandwidth_points(*series), top, color);

  // Setpoint staircase, from whichever run is present.
  if (!runs.empty()) {
    const BandwidthSeries* base = runs.front().first;
    std::vector<std::pair<double, double>> pts;
    for (const WindowRow& row : base->rows) {
      if (!pts.empty() && pts.back().second != row.setpoint)
        pts.emplace_back(row.t, pts.back().second);
      pts.emplace_back(row.t, row.setpoint);
    }
    if (!base->rows.empty()) pts.emplace_back(top.x_max, base->rows.back().setpoint);
    s += svg_polyline(pts, top, "black", 1.5, "6,4");
  }
  int slot = 0;
  if (result.a) s += svg_legend_entry(top, slot++, "#d62728", "run a: pinned high");
  if (result.b) s += svg_legend_entry(top, slot++, "#1f77b4", "run b: controlled");
  if (result.c) s += svg_legend_entry(top, slot++, "#2ca02c", "run c: pinned low");
  s += svg_legend_entry(top, slot++, "black", "setpoint", "6,4");

  // Bottom panel: sessions admitted per second by band, for the controlled
  // run when present.
  const BandwidthSeries* rates =
      result.b ? &*result.b : (result.a ? &*result.a : (result.c ? &*result.c : nullptr));
  ChartFrame bot{width, 80, 24, 500, 810, 0, top.x_max, 0, 1};
  if (rates) {
    for (const WindowRow& row : rates->rows)
      bot.y_max = std::max({bot.y_max, row.high_rate, row.low_rate});
    bot.y_max *= 1.15;
    s += svg_text(width / 2, 482, "middle", 16,
                  "sessions per second by band (run " + rates->run + ")");
    s += svg_axes(bot, "virtual time [s]", "sessions/s");
    std::vector<std::pair<double, double>> high_pts, low_pts;
    for (const WindowRow& row : rates->rows) {
      high_pts.emplace_back(row.t, row.high_rate);
      low_pts.emplace_back(row.t, row.low_rate);
    }
    s += svg_polyline(high_pts, bot, "#9467bd");
    s += svg_polyline(low_pts, bot, "#8c564b");
    s += svg_legend_entry(bot, 0, "#9467bd", "high_band sessions/s");
    s += svg_legend_entry(bot, 1, "#8c564b", "low_band sessions/s");
  }
  s += "</svg>\n";
  return s;
}

std::string bench_svg(const std::vector<BenchReport>& reports, std::string_view title) {
  std::vector<std::int64_t> params;
  for (const BenchReport& r : reports)
    if (std::find(params.begin(), params.end(), r.param) == params.end())
      params.push_back(r.param);
  std::sort(params.begin(), params.end());

  std::map<std::string, std::vector<std::pair<double, double>>> by_variant;
  double y_max = 1;
  for (const BenchReport& r : reports) {
    const auto pos = std::find(params.begin(), params.end(), r.param) - params.begin();
    by_variant[r.variant].emplace_back(static_cast<double>(pos), r.per_call_ns());
    y_max = std::max(y_max, r.per_call_ns());
  }

  const double width = 960, height = 520;
  ChartFrame f{width, 80, 24, 48, 440, -0.5,
               static_cast<double>(params.size()) - 0.5, 0, y_max * 1.15};

  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                  format_double(width) + "\" height=\"" + format_double(height) +
                  "\" viewBox=\"0 0 " + format_double(width) + " " + format_double(height) +
                  "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += svg_text(width / 2, 28, "middle", 16, title);
  const double y0 = f.plot_bottom;
  s += svg_line(f.left, y0, f.width - f.right, y0, "black");
  s += svg_line(f.left, y0, f.left, f.plot_top, "black");
  for (std::size_t i = 0; i < params.size(); ++i)
    s += svg_text(f.px(static_cast<double>(i)), y0 + 20, "middle", 12,
                  std::to_string(params[i]));
  const double ys = nice_step(f.y_max, 6);
  for (double y = 0; y <= f.y_max + 1e-9; y += ys) {
    const double py = f.py(y);
    s += svg_text(f.left - 8, py + 4, "end", 12, format_double(y));
    s += svg_line(f.left, py, f.width - f.right, py, "#dddddd", " stroke-width=\"0.5\"");
  }
  const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
  int idx = 0, slot = 0;
  for (const auto& [variant, pts] : by_variant) {
    const char* color = colors[idx++ % 4];
    s += svg_polyline(pts, f, color, 2.0);
    for (const auto& [x, y] : pts)
      s += "<circle cx=\"" + format_double(f.px(x)) + "\" cy=\"" + format_double(f.py(y)) +
           "\" r=\"4\" fill=\"" + std::string(color) + "\"/>\n";
    s += svg_legend_entry(f, slot++, color, variant);
  }
  s += svg_text((f.left + f.width - f.right) / 2, y0 + 40, "middle", 13, "parameter");
  const std::string rot =
      " transform=\"rotate(-90 18 " + format_double((y0 + f.plot_top) / 2) + ")\"";
  s += svg_text(18, (y0 + f.plot_top) / 2, "middle", 13, "ns per call", rot);
  s += "</svg>\n";
  return s;
}

std::vector<SegmentStats> tracking_segments(const BandwidthSeries& series,
                                            const AppConfig& cfg, double settle) {
  std::vector<SegmentStats> out;
  const double duration = cfg.simulation.duration;
  for (std::size_t i = 0; i < cfg.setpoints.size(); ++i) {
    const double t0 = cfg.setpoints[i].t;
    const double t1 = i + 1 < cfg.setpoints.size() ? cfg.setpoints[i + 1].t : duration;
    const double sp = cfg.setpoints[i].bytes_per_sec;
    const double stats_from = std::max(t0, cfg.simulation.ramp_interval) + settle;

    SegmentStats stats{stats_from, t1, sp, 0, 0, 0, 0};
    double sum_bw = 0, sum_err = 0, max_err = 0;
    for (const WindowRow& row : series.rows) {
      if (row.t < stats_from || row.t >= t1) continue;
      const double err = std::abs(row.bandwidth - sp) / sp * 100.0;
      sum_bw += row.bandwidth;
      sum_err += err;
      max_err = std::max(max_err, err);
      ++stats.windows;
    }
    if (stats.windows > 0) {
      stats.mean_bandwidth = sum_bw / stats.windows;
      stats.mean_abs_err_pct = sum_err / stats.windows;
      stats.max_abs_err_pct = max_err;
    }
    out.push_back(stats);
  }
  return out;
}

}  // namespace layerctx
