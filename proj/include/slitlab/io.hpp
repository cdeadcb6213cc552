#pragma once

#include <string>
#include <vector>

#include "slitlab/density.hpp"

namespace slitlab {

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double value);

/// Writes `contents` to `path`, throwing IoError on failure.
void write_text_file(const std::string& path, const std::string& contents);
std::string read_text_file(const std::string& path);

/// CSV with header `x_m,p_per_m`, one row per grid node.
std::string density_csv(const ScreenDensity& density);
void write_density_csv(const ScreenDensity& density, const std::string& path);

/// Reads a one-column CSV of positions with header `x_m`.
std::vector<double> read_positions_csv(const std::string& path);
std::vector<double> parse_positions_csv(const std::string& text, const std::string& origin = "<input>");

}  // namespace slitlab
