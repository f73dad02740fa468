#include "phaseid/render.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "phaseid/svg.hpp"

namespace phaseid {

namespace {

struct Frame {
  double x0, y0, w, h;
  double lo_x, hi_x, lo_y, hi_y;

  double px(double x) const { return x0 + (hi_x > lo_x ? (x - lo_x) / (hi_x - lo_x) : 0.5) * w; }
  double py(double y) const { return y0 + h - (hi_y > lo_y ? (y - lo_y) / (hi_y - lo_y) : 0.5) * h; }
};

std::string star_points(double cx, double cy, double outer, double inner) {
  std::string pts;
  for (int k = 0; k < 10; ++k) {
    const double r = (k % 2 == 0) ? outer : inner;
    const double a = -std::numbers::pi / 2.0 + k * std::numbers::pi / 5.0;
    if (!pts.empty()) pts += ' ';
    pts += svg::num(cx + r * std::cos(a)) + "," + svg::num(cy + r * std::sin(a));
  }
  return pts;
}

}  // namespace

std::string render_embedding(const Embedding2D& emb, const PhaseAssignment& assign) {
  constexpr double size = 640.0;
  constexpr double pad = 36.0;
  svg::Document doc(size, size + 24.0);
  doc.rect(0, 0, size, size + 24.0, "#ffffff");

  Frame f{pad, pad, size - 2 * pad, size - 2 * pad, 0, 0, 0, 0};
  if (emb.size() > 0) {
    f.lo_x = emb.points.col(0).minCoeff();
    f.hi_x = emb.points.col(0).maxCoeff();
    f.lo_y = emb.points.col(1).minCoeff();
    f.hi_y = emb.points.col(1).maxCoeff();
    // Equal aspect ratio so annular structure is not distorted.
    const double span = std::max(f.hi_x - f.lo_x, f.hi_y - f.lo_y);
    const double cx = 0.5 * (f.lo_x + f.hi_x), cy = 0.5 * (f.lo_y + f.hi_y);
    f.lo_x = cx - span / 2;
    f.hi_x = cx + span / 2;
    f.lo_y = cy - span / 2;
    f.hi_y = cy + span / 2;
  }

  doc.raw("<g class=\"edges\">\n");
  for (std::size_t t = 0; t < emb.size(); ++t) {
    if (!emb.successor[t]) continue;
    const auto a = static_cast<Eigen::Index>(t);
    const auto b = static_cast<Eigen::Index>(*emb.successor[t]);
    doc.line(f.px(emb.points(a, 0)), f.py(emb.points(a, 1)), f.px(emb.points(b, 0)), f.py(emb.points(b, 1)),
             svg::palette(assign.labels[t]), 0.6, 0.35);
  }
  doc.raw("</g>\n<g class=\"nodes\">\n");
  for (std::size_t t = 0; t < emb.size(); ++t) {
    const auto a = static_cast<Eigen::Index>(t);
    doc.circle(f.px(emb.points(a, 0)), f.py(emb.points(a, 1)), 2.5, svg::palette(assign.labels[t]), 0.85);
  }
  doc.raw("</g>\n<g class=\"phase-labels\">\n");
  for (int k = 0; k < assign.K; ++k) {
    doc.text(f.px(assign.cluster_centroids(k, 0)), f.py(assign.cluster_centroids(k, 1)) + 5.0, std::to_string(k), 15.0,
             "middle", "#000000", "font-weight=\"bold\" stroke=\"#ffffff\" stroke-width=\"0.8\"");
  }
  doc.raw("</g>\n");
  doc.polygon(star_points(f.px(emb.centroid(0)), f.py(emb.centroid(1)), 11.0, 4.5), "#ffd700", "#000000", 1.0);
  doc.text(size / 2.0, size + 14.0, "K = " + std::to_string(assign.K) + ", N = " + std::to_string(emb.size()) +
                                        "; star: centroid of all steps", 12.0);
  return doc.str();
}

std::string render_selection_curve(const SelectionCurve& curve, int K_star) {
  constexpr double width = 640.0, height = 400.0;
  constexpr double left = 56.0, right = 24.0, top = 28.0, bottom = 48.0;
  svg::Document doc(width, height);
  doc.rect(0, 0, width, height, "#ffffff");
  if (curve.K_values.empty()) return doc.str();

  const double kmin = curve.K_values.front();
  const double kmax = curve.K_values.back();
  double lo = 0.0, hi = 1.0;
  for (double v : curve.H_c) hi = std::max(hi, v);
  for (double v : curve.objective) lo = std::min(lo, v);
  Frame f{left, top, width - left - right, height - top - bottom, kmin, kmax, lo, hi};

  doc.line(left, f.py(0.0), width - right, f.py(0.0), "#999999", 1.0);
  doc.line(left, top, left, height - bottom, "#000000", 1.0);
  doc.line(left, height - bottom, width - right, height - bottom, "#000000", 1.0);
  for (int k : curve.K_values) {
    doc.text(f.px(k), height - bottom + 16.0, std::to_string(k), 10.0);
  }
  doc.text(width / 2.0, height - 10.0, "number of clusters K", 12.0);
  for (double tick : {lo, 0.0, 0.5, 1.0, hi}) {
    doc.text(left - 6.0, f.py(tick) + 4.0, svg::num(tick), 10.0, "end");
  }

  struct Series {
    const std::vector<double>* values;
    const char* colour;
    const char* name;
  };
  const Series series[] = {{&curve.H_c, "#1f77b4", "H_c (nats)"},
                           {&curve.C_ext_norm, "#2ca02c", "normalised C_ext"},
                           {&curve.K_norm, "#7f7f7f", "normalised K"},
                           {&curve.objective, "#d62728", "objective"}};
  double legend_y = top + 4.0;
  for (const auto& s : series) {
    std::string pts;
    for (std::size_t i = 0; i < curve.K_values.size(); ++i) {
      if (!pts.empty()) pts += ' ';
      pts += svg::num(f.px(curve.K_values[i])) + "," + svg::num(f.py((*s.values)[i]));
    }
    doc.polyline(pts, s.colour, 1.8);
    doc.line(width - right - 150.0, legend_y, width - right - 130.0, legend_y, s.colour, 2.0);
    doc.text(width - right - 124.0, legend_y + 4.0, s.name, 11.0, "start");
    legend_y += 16.0;
  }

  const double x = f.px(K_star);
  doc.line(x, top, x, height - bottom, "#000000", 1.0);
  doc.text(x + 4.0, top + 10.0, "K* = " + std::to_string(K_star), 12.0, "start", "#000000", "class=\"k-star\"");
  return doc.str();
}

}  // namespace phaseid
