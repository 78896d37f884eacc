#pragma once

#include <filesystem>
#include <json.hpp>
#include <span>
#include <string>
#include <vector>

#include "tpz/fields.hpp"
#include "tpz/regions.hpp"

namespace tpz {

// Fixed 17 significant digits so identical runs give identical bytes.
std::string format_number(double x);

// Rows "re,im" with a header.
std::string points_csv(std::span<const Complex> points);
// Rows "re,im,multiplicity".
std::string zeros_csv(const PointSet& zeros);

void write_text(const std::filesystem::path& path, const std::string& text);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

// Primitive SVG: polylines and dots over a window, y axis pointing up.
class SvgCanvas {
 public:
  SvgCanvas(Window window, int pixels = 640);
  void polyline(std::span<const Complex> points, const std::string& color, double width = 1.0, bool closed = false);
  void dots(std::span<const Complex> points, const std::string& color, double radius = 1.5);
  std::string str() const;

 private:
  double px(double re) const;
  double py(double im) const;

  Window window_;
  int width_;
  int height_;
  std::string body_;
};

}  // namespace tpz
