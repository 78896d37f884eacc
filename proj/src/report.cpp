#include "tpz/report.hpp"

#include <cstdio>
#include <fstream>

namespace tpz {

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string points_csv(std::span<const Complex> points) {
  std::string out = "re,im\n";
  for (const auto& z : points) out += format_number(z.real()) + "," + format_number(z.imag()) + "\n";
  return out;
}

std::string zeros_csv(const PointSet& zeros) {
  std::string out = "re,im,multiplicity\n";
  for (std::size_t i = 0; i < zeros.points.size(); ++i) {
    const auto& z = zeros.points[i];
    out += format_number(z.real()) + "," + format_number(z.imag()) + "," + std::to_string(zeros.multiplicity[i]) + "\n";
  }
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) { write_text(path, j.dump(2) + "\n"); }

SvgCanvas::SvgCanvas(Window window, int pixels) : window_(window), width_(pixels) {
  height_ = std::max(1, static_cast<int>(pixels * window.height() / window.width()));
}

double SvgCanvas::px(double re) const { return (re - window_.re0) / window_.width() * width_; }
double SvgCanvas::py(double im) const { return (window_.im1 - im) / window_.height() * height_; }

void SvgCanvas::polyline(std::span<const Complex> points, const std::string& color, double width, bool closed) {
  if (points.empty()) return;
  std::string pts;
  char buf[64];
  for (const auto& z : points) {
    std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(z.real()), py(z.imag()));
    pts += buf;
  }
  if (closed) {
    std::snprintf(buf, sizeof buf, "%.2f,%.2f", px(points.front().real()), py(points.front().imag()));
    pts += buf;
  }
  body_ += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"" + format_number(width) + "\" points=\"" +
           pts + "\"/>\n";
}

void SvgCanvas::dots(std::span<const Complex> points, const std::string& color, double radius) {
  char buf[160];
  for (const auto& z : points) {
    if (!window_.contains(z)) continue;
    std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"%.2f\" fill=\"%s\"/>\n", px(z.real()),
                  py(z.imag()), radius, color.c_str());
    body_ += buf;
  }
}

std::string SvgCanvas::str() const {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width_) + "\" height=\"" +
         std::to_string(height_) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n" + body_ + "</svg>\n";
}

}  // namespace tpz
