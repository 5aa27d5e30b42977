#pragma once

// Deterministic file emitters shared by the CLI: CSV with 17 significant
// digits and LF line endings, Wavefront OBJ (v/vn/f), and a minimal static
// SVG plotter (polylines + annotated axes, viewBox-normalized).

#include <filesystem>
#include <string>
#include <vector>

#include "grim/surface.hpp"

namespace grim {

/// %.17g rendering of a double (shortest form with 17 significant digits).
std::string format_double(double v);

struct CsvTable {
  std::vector<std::string> preamble;  // comment lines, written verbatim
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

void write_csv(const std::filesystem::path& path, const CsvTable& table);

/// Triangulated quads, counterclockwise toward the stored normals.
void write_obj(const std::filesystem::path& path, const SurfaceMesh& mesh);

struct SvgPolyline {
  std::vector<std::pair<double, double>> points;
  std::string color = "#1f77b4";
  double width = 1.5;
};

struct SvgPlot {
  std::vector<SvgPolyline> polylines;
  std::string x_label = "x";
  std::string y_label = "y";
  double width = 640;
  double height = 480;
};

void write_svg(const std::filesystem::path& path, const SvgPlot& plot);

}  // namespace grim
