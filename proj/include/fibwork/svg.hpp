#pragma once

// SVG pictures of tilings and chain galleries. Free dominoes are gray, forced
// verticals blue, and the lattice path is drawn in blue. Output depends only
// on the input, so files are byte-stable across runs.

#include <sstream>
#include <string>
#include <vector>

#include "fibwork/chains2.hpp"
#include "fibwork/tiling.hpp"

namespace fibwork {

namespace detail {

inline constexpr const char* kFreeFill = "#d9d9d9";
inline constexpr const char* kForcedFill = "#bcd2f5";
inline constexpr const char* kPathStroke = "#1f4fbf";

/// Draws one board with its lower-left corner at (x0, y0 + n*cell).
inline void draw_board(std::ostringstream& out, const Tiling& t, double x0, double y0, double cell) {
  auto cx = [&](double column) { return x0 + column * cell; };
  auto cy = [&](double row) { return y0 + (t.n - row) * cell; };

  out << "<g>\n";
  auto rect = [&](double col_left, double row_top, double w, double h, const char* fill) {
    out << "<rect x=\"" << cx(col_left) << "\" y=\"" << cy(row_top) << "\" width=\"" << w * cell << "\" height=\""
        << h * cell << "\" fill=\"" << fill << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
  };
  for (int r = 1; r <= t.n; ++r) {
    for (int e : t.row(r)) rect(e - 2, r, 2, 1, kFreeFill);
  }
  for (int c = 1; c <= t.m; ++c) {
    for (int top : t.column(c)) rect(c - 1, top, 1, 2, kFreeFill);
    if (t.has_forced_domino(c)) rect(c - 1, t.height(c), 1, 2, kForcedFill);
  }
  // grid
  for (int c = 0; c <= t.m; ++c) {
    out << "<line x1=\"" << cx(c) << "\" y1=\"" << cy(0) << "\" x2=\"" << cx(c) << "\" y2=\"" << cy(t.n)
        << "\" stroke=\"#555555\" stroke-width=\"0.6\"/>\n";
  }
  for (int r = 0; r <= t.n; ++r) {
    out << "<line x1=\"" << cx(0) << "\" y1=\"" << cy(r) << "\" x2=\"" << cx(t.m) << "\" y2=\"" << cy(r)
        << "\" stroke=\"#555555\" stroke-width=\"0.6\"/>\n";
  }
  // lattice path: up to h_i, then across column i, finally up to (m, n)
  out << "<polyline fill=\"none\" stroke=\"" << kPathStroke << "\" stroke-width=\"3\" points=\"" << cx(0) << ","
      << cy(0);
  int y = 0;
  for (int c = 1; c <= t.m; ++c) {
    if (t.height(c) != y) {
      y = t.height(c);
      out << " " << cx(c - 1) << "," << cy(y);
    }
    out << " " << cx(c) << "," << cy(y);
  }
  if (y != t.n) out << " " << cx(t.m) << "," << cy(t.n);
  out << "\"/>\n</g>\n";
}

}  // namespace detail

/// A single tiling with grid lines, path and a degree label.
inline std::string render_tiling_svg(const Tiling& t, double cell = 40.0) {
  const double margin = 20.0;
  const double label = 28.0;
  const double width = 2 * margin + t.m * cell;
  const double height = 2 * margin + t.n * cell + label;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  detail::draw_board(out, t, margin, margin, cell);
  out << "<text x=\"" << margin << "\" y=\"" << height - margin / 2 << "\" font-family=\"sans-serif\" font-size=\"16\">"
      << "T in T(" << t.m << "," << t.n << "), degree " << weight_degree(t) << "</text>\n";
  out << "</svg>\n";
  return out.str();
}

/// One row per block, maximal tiling on the left, arrows following pi.
inline std::string render_chains_svg(const std::vector<ChainBlock>& blocks, int m, double cell = 16.0) {
  const double margin = 16.0;
  const double gap = 34.0;
  const double board_w = m * cell;
  const double board_h = 2 * cell;
  const double row_h = board_h + 36.0;
  std::size_t longest = 0;
  for (const auto& b : blocks) longest = std::max(longest, b.size());
  const double width = 2 * margin + static_cast<double>(longest) * (board_w + gap);
  const double height = 2 * margin + static_cast<double>(blocks.size()) * row_h;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto& block = blocks[i];
    const double y = margin + static_cast<double>(i) * row_h;
    out << "<text x=\"" << margin << "\" y=\"" << y + 11 << "\" font-family=\"sans-serif\" font-size=\"11\">block "
        << i + 1 << ": degrees " << block.min_degree << ".." << block.max_degree << ", " << block.size()
        << " tilings</text>\n";
    for (std::size_t j = 0; j < block.size(); ++j) {
      const double x = margin + static_cast<double>(j) * (board_w + gap);
      detail::draw_board(out, block.tilings[j], x, y + 16, cell);
      if (j + 1 < block.size()) {
        out << "<text x=\"" << x + board_w + 8 << "\" y=\"" << y + 16 + board_h / 2 + 5
            << "\" font-family=\"sans-serif\" font-size=\"14\">&#8594;</text>\n";
      }
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace fibwork
