#include "phaseid/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "phaseid/error.hpp"

namespace phaseid::svg {

std::string num(double v, int decimals) {
  char buf[64];
  if (std::abs(v) < 0.5 * std::pow(10.0, -decimals)) v = 0.0;  // no "-0.00"
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string_view palette(int k) {
  static constexpr std::array<std::string_view, 20> colours = {
      "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
      "#aec7e8", "#ffbb78", "#98df8a", "#ff9896", "#c5b0d5", "#c49c94", "#f7b6d2", "#c7c7c7", "#dbdb8d", "#9edae5"};
  const auto idx = static_cast<std::size_t>(k < 0 ? -k : k) % colours.size();
  return colours[idx];
}

std::string heat(double p) {
  p = std::clamp(p, 0.0, 1.0);
  auto ch = [&](double from, double to) { return static_cast<int>(std::lround(from + (to - from) * p)); };
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", ch(255, 8), ch(255, 48), ch(255, 107));
  return buf;
}

Document::Document(double width, double height) : width_(width), height_(height) {}

void Document::rect(double x, double y, double w, double h, std::string_view fill, std::string_view stroke,
                    double stroke_width, std::string_view extra) {
  body_ += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) + "\" height=\"" + num(h) +
           "\" fill=\"" + std::string(fill) + "\"";
  if (stroke != "none") body_ += " stroke=\"" + std::string(stroke) + "\" stroke-width=\"" + num(stroke_width) + "\"";
  if (!extra.empty()) body_ += " " + std::string(extra);
  body_ += "/>\n";
}

void Document::line(double x1, double y1, double x2, double y2, std::string_view stroke, double width, double opacity) {
  body_ += "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" + num(y2) +
           "\" stroke=\"" + std::string(stroke) + "\" stroke-width=\"" + num(width) + "\"";
  if (opacity < 1.0) body_ += " stroke-opacity=\"" + num(opacity) + "\"";
  body_ += "/>\n";
}

void Document::circle(double cx, double cy, double r, std::string_view fill, double opacity) {
  body_ += "<circle cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"" + num(r) + "\" fill=\"" + std::string(fill) + "\"";
  if (opacity < 1.0) body_ += " fill-opacity=\"" + num(opacity) + "\"";
  body_ += "/>\n";
}

void Document::polygon(std::string_view points, std::string_view fill, std::string_view stroke, double stroke_width) {
  body_ += "<polygon points=\"" + std::string(points) + "\" fill=\"" + std::string(fill) + "\" stroke=\"" +
           std::string(stroke) + "\" stroke-width=\"" + num(stroke_width) + "\"/>\n";
}

void Document::polyline(std::string_view points, std::string_view stroke, double width) {
  body_ += "<polyline points=\"" + std::string(points) + "\" fill=\"none\" stroke=\"" + std::string(stroke) +
           "\" stroke-width=\"" + num(width) + "\"/>\n";
}

void Document::text(double x, double y, std::string_view content, double size, std::string_view anchor,
                    std::string_view fill, std::string_view extra) {
  body_ += "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-size=\"" + num(size) + "\" text-anchor=\"" +
           std::string(anchor) + "\" fill=\"" + std::string(fill) + "\" font-family=\"sans-serif\"";
  if (!extra.empty()) body_ += " " + std::string(extra);
  body_ += ">" + escape(content) + "</text>\n";
}

void Document::raw(std::string_view fragment) { body_ += fragment; }

std::string Document::str() const {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width_) + "\" height=\"" + num(height_) +
         "\" viewBox=\"0 0 " + num(width_) + " " + num(height_) + "\">\n" + body_ + "</svg>\n";
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << content;
  if (!out) throw InputError("write failed for '" + path + "'");
}

}  // namespace phaseid::svg
