#include "slitlab/io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include "slitlab/errors.hpp"

namespace slitlab {

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) throw InvalidArgument("format_double: conversion failed");
  return {buf.data(), end};
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path, "cannot open for writing");
  out << contents;
  out.flush();
  if (!out) throw IoError(path, "write failed");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string density_csv(const ScreenDensity& density) {
  std::string out = "x_m,p_per_m\n";
  for (std::size_t i = 0; i < density.size(); ++i) {
    out += format_double(density.x(i));
    out += ',';
    out += format_double(density[i]);
    out += '\n';
  }
  return out;
}

void write_density_csv(const ScreenDensity& density, const std::string& path) {
  write_text_file(path, density_csv(density));
}

std::vector<double> parse_positions_csv(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::vector<double> positions;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != "x_m") throw IoError(origin, "expected header 'x_m', got '" + line + "'");
      header_seen = true;
      continue;
    }
    double value = 0.0;
    const char* first = line.data();
    const char* last = line.data() + line.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
      throw IoError(origin, "line " + std::to_string(line_no) + ": not a number: '" + line + "'");
    positions.push_back(value);
  }
  if (!header_seen) throw IoError(origin, "missing header 'x_m'");
  return positions;
}

std::vector<double> read_positions_csv(const std::string& path) {
  return parse_positions_csv(read_text_file(path), path);
}

}  // namespace slitlab
