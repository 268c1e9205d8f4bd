#include "lucaskit/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

namespace lucaskit {

namespace {

constexpr std::uint64_t kMaxValueRows = 67;  // row 66 still fits exactly in 64 bits

// exact triangle rows, no modulus
std::vector<std::vector<std::uint64_t>> exact_rows(std::uint64_t n_max) {
  std::vector<std::vector<std::uint64_t>> rows(n_max + 1);
  rows[0] = {1};
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    rows[n].resize(n + 1);
    rows[n][0] = rows[n][n] = 1;
    for (std::uint64_t j = 1; j < n; ++j) rows[n][j] = rows[n - 1][j - 1] + rows[n - 1][j];
  }
  return rows;
}

std::string format_fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string render_ascii(std::uint64_t p, const DSet& dset, const RenderOptions& opts) {
  std::vector<std::vector<std::uint64_t>> values;
  std::size_t content_width = 1;
  if (opts.show_values) {
    values = exact_rows(p - 1);
    for (const auto& row : values)
      for (std::uint64_t v : row)
        content_width = std::max(content_width, std::to_string(v).size());
  }
  std::size_t cell = content_width + 2;  // room for the [ ] marker
  if (cell % 2) ++cell;
  const std::size_t half = cell / 2;

  std::string out;
  for (std::uint64_t r = 0; r < p; ++r) {
    std::string line((p - 1 + r) * half + cell, ' ');
    for (std::uint64_t s = 0; s <= r; ++s) {
      std::string text = opts.show_values ? std::to_string(values[r][s])
                                          : (dset.contains({r, s}) ? "x" : ".");
      if (dset.contains({r, s})) text = "[" + text + "]";
      const std::size_t pos = (2 * s + p - 1 - r) * half;
      const std::size_t start = pos + (cell - text.size()) / 2;
      line.replace(start, text.size(), text);
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line;
    out += "\n";
  }
  return out;
}

std::string render_svg(std::uint64_t p, const DSet& dset, const RenderOptions& opts) {
  const double h = opts.cell_size;            // hexagon height (vertex to vertex)
  const double w = h * 0.8660254037844386;    // width across flats
  const double margin = h / 2;
  const double width = margin * 2 + w * static_cast<double>(p);
  const double height = margin * 2 + h + 0.75 * h * static_cast<double>(p - 1);

  std::vector<std::vector<std::uint64_t>> values;
  if (opts.show_values) values = exact_rows(p - 1);

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + format_fixed(width) +
         "\" height=\"" + format_fixed(height) + "\" viewBox=\"0 0 " + format_fixed(width) +
         " " + format_fixed(height) + "\">\n";
  out += "<g stroke=\"#888888\" stroke-width=\"1\">\n";
  for (std::uint64_t r = 0; r < p; ++r) {
    for (std::uint64_t s = 0; s <= r; ++s) {
      const double cx =
          margin + w * (static_cast<double>(s) + static_cast<double>(p - 1 - r) / 2.0) + w / 2;
      const double cy = margin + h / 2 + 0.75 * h * static_cast<double>(r);
      std::string points;
      for (int i = 0; i < 6; ++i) {
        const double angle = (90.0 + 60.0 * i) * M_PI / 180.0;
        if (i) points += " ";
        points += format_fixed(cx + h / 2 * std::cos(angle)) + "," +
                  format_fixed(cy - h / 2 * std::sin(angle));
      }
      const bool member = dset.contains({r, s});
      out += "<polygon data-r=\"" + std::to_string(r) + "\" data-s=\"" + std::to_string(s) +
             "\"" + (member ? " class=\"member\" fill=\"#9db4e0\"" : " fill=\"none\"") +
             " points=\"" + points + "\"/>\n";
      if (opts.show_values)
        out += "<text x=\"" + format_fixed(cx) + "\" y=\"" + format_fixed(cy + 0.15 * h) +
               "\" font-size=\"" + format_fixed(0.4 * h) +
               "\" text-anchor=\"middle\" stroke=\"none\" fill=\"#000000\">" +
               std::to_string(values[r][s]) + "</text>\n";
    }
  }
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace

std::string render_triangle(std::uint64_t p, const DSet& dset, const RenderOptions& opts) {
  if (dset.p != p)
    throw std::invalid_argument("render_triangle: digit set belongs to a different prime");
  if (!is_prime(p)) throw std::invalid_argument("render_triangle: p is not prime");
  if (opts.show_values && p > kMaxValueRows)
    throw std::domain_error("render_triangle: show_values requires p <= 67");
  if (opts.cell_size <= 0) throw std::invalid_argument("render_triangle: cell_size must be positive");
  return opts.format == RenderFormat::ascii ? render_ascii(p, dset, opts)
                                            : render_svg(p, dset, opts);
}

}  // namespace lucaskit
