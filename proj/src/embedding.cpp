#include "phaseid/embedding.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "phaseid/error.hpp"

namespace phaseid {

Embedding2D make_embedding(const FeatureMatrix& features, Points2 points) {
  if (static_cast<std::size_t>(points.rows()) != features.size()) {
    throw InputError("embedding row count mismatch: expected " + std::to_string(features.size()) + ", found " +
                     std::to_string(points.rows()));
  }
  if (!points.allFinite()) throw InputError("embedding contains non-finite coordinates");
  Embedding2D emb;
  emb.points = std::move(points);
  emb.step_index = features.step_index;
  emb.successor = features.successor;
  if (emb.points.rows() > 0) emb.centroid = emb.points.colwise().mean().transpose();
  return emb;
}

namespace {

double column_pair_product(const Eigen::MatrixXd& x, const Eigen::VectorXd& mean, Eigen::Index a, Eigen::Index b) {
  double acc = 0.0;
  for (Eigen::Index r = 0; r < x.rows(); ++r) acc += (x(r, a) - mean(a)) * (x(r, b) - mean(b));
  return acc;
}

}  // namespace

Eigen::MatrixXd centered_scatter(const Eigen::MatrixXd& x, Backend backend) {
  const Eigen::Index d = x.cols();
  const Eigen::VectorXd mean = x.colwise().mean().transpose();
  Eigen::MatrixXd s(d, d);
  // Each entry is summed serially so the parallel and serial kernels agree
  // bit for bit.
  auto fill_row = [&](Eigen::Index a) {
    for (Eigen::Index b = 0; b <= a; ++b) {
      const double v = column_pair_product(x, mean, a, b);
      s(a, b) = v;
      s(b, a) = v;
    }
  };
  if (backend == Backend::Serial) {
    for (Eigen::Index a = 0; a < d; ++a) fill_row(a);
  } else {
    PHASEID_OMP(parallel for schedule(dynamic, 1))
    for (Eigen::Index a = 0; a < d; ++a) fill_row(a);
  }
  return s;
}

Embedding2D embed_pca(const FeatureMatrix& features, Backend backend) {
  const auto& x = features.rows;
  if (x.rows() < 3) throw DegenerateError("PCA embedding needs at least 3 rows, got " + std::to_string(x.rows()));
  if (x.cols() < 2) throw DegenerateError("PCA embedding needs at least 2 feature columns, got " + std::to_string(x.cols()));

  const Eigen::MatrixXd scatter = centered_scatter(x, backend);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(scatter);
  if (eig.info() != Eigen::Success) throw DegenerateError("eigendecomposition of the feature scatter matrix failed");

  // Eigenvalues ascend; the top two are at the end.
  const Eigen::Index d = x.cols();
  const double top = eig.eigenvalues()(d - 1);
  const double second = eig.eigenvalues()(d - 2);
  const int nonzero = (top > 0.0 ? 1 : 0) + (second > 1e-12 * top ? 1 : 0);
  if (top <= 0.0 || nonzero < 2) {
    throw DegenerateError("rank-deficient features: " + std::to_string(top > 0.0 ? 1 : 0) +
                          " nonzero singular value(s), PCA needs 2");
  }

  Eigen::Matrix<double, Eigen::Dynamic, 2> basis(d, 2);
  basis.col(0) = eig.eigenvectors().col(d - 1);
  basis.col(1) = eig.eigenvectors().col(d - 2);
  for (int c = 0; c < 2; ++c) {
    Eigen::Index arg = 0;
    for (Eigen::Index k = 1; k < d; ++k) {
      if (std::abs(basis(k, c)) > std::abs(basis(arg, c))) arg = k;
    }
    if (basis(arg, c) < 0.0) basis.col(c) *= -1.0;
  }

  const Eigen::RowVectorXd mean = x.colwise().mean();
  Points2 points = (x.rowwise() - mean) * basis;
  return make_embedding(features, std::move(points));
}

Points2 read_embedding_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open embedding file '" + path.string() + "'");
  std::vector<double> coords;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string::npos || text[first] == '#') continue;
    for (char& ch : text) {
      if (ch == ',' || ch == '\t' || ch == '\r') ch = ' ';
    }
    double vals[2];
    int count = 0;
    const char* p = text.data();
    const char* end = text.data() + text.size();
    while (p < end) {
      while (p < end && *p == ' ') ++p;
      if (p == end) break;
      double v = 0.0;
      auto [next, ec] = std::from_chars(p, end, v);
      if (ec != std::errc{}) {
        throw InputError("embedding file line " + std::to_string(line) + ": malformed number");
      }
      if (count == 2) throw InputError("embedding file line " + std::to_string(line) + ": expected 2 values");
      vals[count++] = v;
      p = next;
    }
    if (count != 2) throw InputError("embedding file line " + std::to_string(line) + ": expected 2 values");
    if (!std::isfinite(vals[0]) || !std::isfinite(vals[1])) {
      throw InputError("embedding file line " + std::to_string(line) + ": non-finite coordinate");
    }
    coords.push_back(vals[0]);
    coords.push_back(vals[1]);
  }
  Points2 pts(static_cast<Eigen::Index>(coords.size() / 2), 2);
  for (Eigen::Index i = 0; i < pts.rows(); ++i) {
    pts(i, 0) = coords[static_cast<std::size_t>(2 * i)];
    pts(i, 1) = coords[static_cast<std::size_t>(2 * i + 1)];
  }
  return pts;
}

Embedding2D import_embedding(const FeatureMatrix& features, const std::filesystem::path& path) {
  return make_embedding(features, read_embedding_file(path));
}

void write_embedding_file(const Embedding2D& emb, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write embedding file '" + path.string() + "'");
  char buf[64];
  for (Eigen::Index i = 0; i < emb.points.rows(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", emb.points(i, 0), emb.points(i, 1));
    out << buf;
  }
}

}  // namespace phaseid
