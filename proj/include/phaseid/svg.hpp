#pragma once

#include <string>
#include <string_view>

namespace phaseid::svg {

/// Minimal SVG builder. Coordinates are printed with fixed precision so the
/// output is byte-stable across runs and platforms.
class Document {
 public:
  Document(double width, double height);

  void rect(double x, double y, double w, double h, std::string_view fill, std::string_view stroke = "none",
            double stroke_width = 0.0, std::string_view extra = {});
  void line(double x1, double y1, double x2, double y2, std::string_view stroke, double width, double opacity = 1.0);
  void circle(double cx, double cy, double r, std::string_view fill, double opacity = 1.0);
  void polygon(std::string_view points, std::string_view fill, std::string_view stroke, double stroke_width);
  void polyline(std::string_view points, std::string_view stroke, double width);
  void text(double x, double y, std::string_view content, double size = 12.0, std::string_view anchor = "middle",
            std::string_view fill = "#000000", std::string_view extra = {});
  void raw(std::string_view fragment);

  std::string str() const;

 private:
  std::string body_;
  double width_;
  double height_;
};

std::string num(double v, int decimals = 2);
std::string escape(std::string_view s);

/// Categorical colour for cluster `k` (cycles through a fixed palette).
std::string_view palette(int k);

/// Sequential white-to-blue ramp for p in [0, 1].
std::string heat(double p);

void write_file(const std::string& path, const std::string& content);

}  // namespace phaseid::svg
