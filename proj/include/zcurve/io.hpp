#pragma once

#include <string>
#include <vector>

namespace zcurve {

// Joins pre-formatted cells into an RFC-ish CSV: header line plus rows,
// newline-terminated.  Cells are expected to be comma-free (numbers, enums).
std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows);

struct SvgOptions {
  int width = 960;
  int height = 480;
  std::string title;
  std::string x_label;
  std::string y_label;
  std::string config_hash;        // embedded in the metadata comment
  bool include_timestamp = true;  // suppressible for byte-stable goldens
};

// Single-polyline plot with a frame, min/max tick labels, and a metadata
// comment carrying the config hash (and optionally a UTC timestamp).
std::string svg_line_plot(const std::vector<double>& xs,
                          const std::vector<double>& ys,
                          const SvgOptions& opts);

// Writes content to path ("-" or empty means stdout).
void write_output(const std::string& path, const std::string& content);

}  // namespace zcurve
