#include "zcurve/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace zcurve {

std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  auto emit_line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  emit_line(header);
  for (const auto& row : rows) {
    if (row.size() != header.size())
      throw std::domain_error("csv_table: row width differs from header");
    emit_line(row);
  }
  return out;
}

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string utc_now() {
  std::time_t now = std::time(nullptr);
  std::tm tm_utc;
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

}  // namespace

std::string svg_line_plot(const std::vector<double>& xs,
                          const std::vector<double>& ys,
                          const SvgOptions& opts) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw std::domain_error("svg_line_plot: need >= 2 matching points");
  const double margin = 50.0;
  const double w = opts.width, h = opts.height;
  double xmin = *std::min_element(xs.begin(), xs.end());
  double xmax = *std::max_element(xs.begin(), xs.end());
  double ymin = *std::min_element(ys.begin(), ys.end());
  double ymax = *std::max_element(ys.begin(), ys.end());
  if (xmax == xmin) xmax = xmin + 1.0;
  if (ymax == ymin) {
    ymax += 0.5;
    ymin -= 0.5;
  }
  auto px = [&](double x) {
    return margin + (x - xmin) / (xmax - xmin) * (w - 2 * margin);
  };
  auto py = [&](double y) {
    return h - margin - (y - ymin) / (ymax - ymin) * (h - 2 * margin);
  };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<!-- config=" + opts.config_hash;
  if (opts.include_timestamp) svg += " generated=" + utc_now();
  svg += " -->\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(opts.width) + "\" height=\"" +
         std::to_string(opts.height) + "\" viewBox=\"0 0 " +
         std::to_string(opts.width) + " " + std::to_string(opts.height) +
         "\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(opts.width) +
         "\" height=\"" + std::to_string(opts.height) +
         "\" fill=\"white\"/>\n";
  svg += "<rect x=\"" + num(margin) + "\" y=\"" + num(margin) + "\" width=\"" +
         num(w - 2 * margin) + "\" height=\"" + num(h - 2 * margin) +
         "\" fill=\"none\" stroke=\"black\"/>\n";
  if (!opts.title.empty())
    svg += "<text x=\"" + num(w / 2) +
           "\" y=\"30\" text-anchor=\"middle\" font-family=\"monospace\" "
           "font-size=\"14\">" +
           opts.title + "</text>\n";
  // min/max tick labels
  svg += "<text x=\"" + num(margin) + "\" y=\"" + num(h - margin + 18) +
         "\" font-family=\"monospace\" font-size=\"11\">" + num(xmin) +
         "</text>\n";
  svg += "<text x=\"" + num(w - margin) + "\" y=\"" + num(h - margin + 18) +
         "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"11\">" +
         num(xmax) + "</text>\n";
  svg += "<text x=\"" + num(margin - 6) + "\" y=\"" + num(h - margin) +
         "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"11\">" +
         num(ymin) + "</text>\n";
  svg += "<text x=\"" + num(margin - 6) + "\" y=\"" + num(margin + 4) +
         "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"11\">" +
         num(ymax) + "</text>\n";
  if (!opts.x_label.empty())
    svg += "<text x=\"" + num(w / 2) + "\" y=\"" + num(h - 10) +
           "\" text-anchor=\"middle\" font-family=\"monospace\" "
           "font-size=\"12\">" +
           opts.x_label + "</text>\n";
  if (!opts.y_label.empty())
    svg += "<text x=\"14\" y=\"" + num(h / 2) +
           "\" text-anchor=\"middle\" font-family=\"monospace\" "
           "font-size=\"12\" transform=\"rotate(-90 14 " +
           num(h / 2) + ")\">" + opts.y_label + "</text>\n";
  // zero line if the range straddles zero
  if (ymin < 0.0 && ymax > 0.0)
    svg += "<line x1=\"" + num(margin) + "\" y1=\"" + num(py(0.0)) +
           "\" x2=\"" + num(w - margin) + "\" y2=\"" + num(py(0.0)) +
           "\" stroke=\"#bbbbbb\" stroke-dasharray=\"4 3\"/>\n";
  svg += "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1\" "
         "points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) svg += ' ';
    svg += num(px(xs[i])) + "," + num(py(ys[i]));
  }
  svg += "\"/>\n</svg>\n";
  return svg;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
  if (!out) throw std::runtime_error("failed writing output file: " + path);
}

}  // namespace zcurve
