#include "grim/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace grim {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);  // LF endings everywhere
  if (!out) {
    throw std::runtime_error("cannot open for writing: " + path.string());
  }
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
  auto out = open_out(path);
  for (const auto& line : table.preamble) out << "# " << line << "\n";
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    out << table.header[i] << (i + 1 < table.header.size() ? "," : "");
  }
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << format_double(row[i]) << (i + 1 < row.size() ? "," : "");
    }
    out << "\n";
  }
}

void write_obj(const std::filesystem::path& path, const SurfaceMesh& mesh) {
  auto out = open_out(path);
  for (const auto& v : mesh.vertices) {
    out << "v " << format_double(v.x) << " " << format_double(v.y) << " "
        << format_double(v.z) << "\n";
  }
  for (const auto& c : mesh.curvature) {
    out << "vn " << format_double(c.N_e[0]) << " " << format_double(c.N_e[1])
        << " " << format_double(c.N_e[2]) << "\n";
  }
  auto emit = [&](std::size_t v1, std::size_t v2, std::size_t v3) {
    // Counterclockwise as seen from the stored normal side.
    const Vec3 p1 = {mesh.vertices[v1].x, mesh.vertices[v1].y, mesh.vertices[v1].z};
    const Vec3 p2 = {mesh.vertices[v2].x, mesh.vertices[v2].y, mesh.vertices[v2].z};
    const Vec3 p3 = {mesh.vertices[v3].x, mesh.vertices[v3].y, mesh.vertices[v3].z};
    const Vec3 e1 = {p2[0] - p1[0], p2[1] - p1[1], p2[2] - p1[2]};
    const Vec3 e2 = {p3[0] - p1[0], p3[1] - p1[1], p3[2] - p1[2]};
    Vec3 n = cross_e(e1, e2);
    Vec3 ref = mesh.curvature[v1].N_e;
    if (dot_e(n, ref) < 0.0) std::swap(v2, v3);
    out << "f " << v1 + 1 << "//" << v1 + 1 << " " << v2 + 1 << "//" << v2 + 1
        << " " << v3 + 1 << "//" << v3 + 1 << "\n";
  };
  for (std::size_t i = 0; i + 1 < mesh.ns; ++i) {
    for (std::size_t j = 0; j + 1 < mesh.nt; ++j) {
      const std::size_t a = mesh.index(i, j);
      const std::size_t b = mesh.index(i + 1, j);
      const std::size_t c = mesh.index(i + 1, j + 1);
      const std::size_t d = mesh.index(i, j + 1);
      emit(a, b, c);
      emit(a, c, d);
    }
  }
}

void write_svg(const std::filesystem::path& path, const SvgPlot& plot) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& pl : plot.polylines) {
    for (const auto& [x, y] : pl.points) {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (!(xmax > xmin)) { xmin -= 0.5; xmax += 0.5; }
  if (!(ymax > ymin)) { ymin -= 0.5; ymax += 0.5; }
  const double margin = 50.0;
  const double pw = plot.width - 2 * margin;
  const double ph = plot.height - 2 * margin;
  auto sx = [&](double x) { return margin + (x - xmin) / (xmax - xmin) * pw; };
  auto sy = [&](double y) { return margin + (ymax - y) / (ymax - ymin) * ph; };

  auto out = open_out(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 "
      << plot.width << " " << plot.height << "\">\n";
  // Axes with end labels and range annotations.
  out << "<line x1=\"" << margin << "\" y1=\"" << plot.height - margin
      << "\" x2=\"" << plot.width - margin << "\" y2=\"" << plot.height - margin
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << margin << "\" y1=\"" << plot.height - margin
      << "\" x2=\"" << margin << "\" y2=\"" << margin << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << plot.width - margin << "\" y=\"" << plot.height - margin + 30
      << "\" font-size=\"14\" text-anchor=\"end\">" << plot.x_label << "</text>\n";
  out << "<text x=\"" << margin - 35 << "\" y=\"" << margin
      << "\" font-size=\"14\">" << plot.y_label << "</text>\n";
  out << "<text x=\"" << margin << "\" y=\"" << plot.height - margin + 16
      << "\" font-size=\"10\">" << format_double(xmin) << "</text>\n";
  out << "<text x=\"" << plot.width - margin << "\" y=\"" << plot.height - margin + 16
      << "\" font-size=\"10\" text-anchor=\"end\">" << format_double(xmax) << "</text>\n";
  out << "<text x=\"" << margin - 45 << "\" y=\"" << plot.height - margin
      << "\" font-size=\"10\">" << format_double(ymin) << "</text>\n";
  out << "<text x=\"" << margin - 45 << "\" y=\"" << margin + 10
      << "\" font-size=\"10\">" << format_double(ymax) << "</text>\n";
  for (const auto& pl : plot.polylines) {
    out << "<polyline fill=\"none\" stroke=\"" << pl.color << "\" stroke-width=\""
        << pl.width << "\" points=\"";
    for (const auto& [x, y] : pl.points) {
      out << sx(x) << "," << sy(y) << " ";
    }
    out << "\"/>\n";
  }
  out << "</svg>\n";
}

}  // namespace grim
