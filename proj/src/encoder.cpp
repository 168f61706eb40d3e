#include "qcanvas/encoder.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qcanvas {

ShellVector shell_sums(const OrbitalPopulations& pops) {
  ShellVector v;
  for (const auto& e : pops.entries) {
    if (e.l < 0 || e.l > 2)
      throw std::invalid_argument("shell_sums: l outside {0,1,2}");
    v.p[static_cast<size_t>(e.l)] += e.n;
  }
  return v;
}

ShellVector normalize_shells(const ShellVector& raw) {
  const double lo = *std::min_element(raw.p.begin(), raw.p.end());
  const double hi = *std::max_element(raw.p.begin(), raw.p.end());
  ShellVector out;
  if (hi == lo) {
    out.p = {0.5, 0.5, 0.5};
    return out;
  }
  for (size_t i = 0; i < 3; ++i) out.p[i] = (raw.p[i] - lo) / (hi - lo);
  return out;
}

Eigen::Matrix3d gaf(const ShellVector& normalized) {
  std::array<double, 3> phi{};
  for (size_t i = 0; i < 3; ++i)
    phi[i] = std::acos(std::clamp(normalized.p[i], 0.0, 1.0));
  Eigen::Matrix3d g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      g(i, j) = std::cos(phi[static_cast<size_t>(i)] +
                         phi[static_cast<size_t>(j)]);
  return g;
}

Eigen::Matrix3d mtf(const ShellVector& normalized) {
  // rank quantization, ties broken by sequence index (stable)
  std::array<int, 3> order = {0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return normalized.p[static_cast<size_t>(a)] <
           normalized.p[static_cast<size_t>(b)];
  });
  std::array<int, 3> state{};  // 1-based states per sequence position
  for (int rank = 0; rank < 3; ++rank)
    state[static_cast<size_t>(order[static_cast<size_t>(rank)])] = rank + 1;

  Eigen::Matrix3d counts = Eigen::Matrix3d::Zero();
  for (int t = 0; t < 2; ++t)
    counts(state[static_cast<size_t>(t)] - 1,
           state[static_cast<size_t>(t + 1)] - 1) += 1.0;

  Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
  for (int u = 0; u < 3; ++u) {
    const double outgoing = counts.row(u).sum();
    if (outgoing > 0) m.row(u) = counts.row(u) / outgoing;
  }
  return m;
}

Eigen::Matrix<double, 3, 5> omap(const OrbitalPopulations& pops) {
  Eigen::Matrix<double, 3, 5> tile = Eigen::Matrix<double, 3, 5>::Zero();
  for (const auto& e : pops.entries) {
    if (e.l < 0 || e.l > 2)
      throw std::invalid_argument("omap: population with l > 2");
    if (std::abs(e.m) > e.l)
      throw std::invalid_argument("omap: |m| exceeds l");
    tile(e.l, e.m + 2) = e.n;
  }
  return tile;
}

ComPair com(const ShellVector& raw_a, const ShellVector& raw_b) {
  ComPair out;
  Eigen::Vector3d a(raw_a.p[0], raw_a.p[1], raw_a.p[2]);
  Eigen::Vector3d b(raw_b.p[0], raw_b.p[1], raw_b.p[2]);
  out.raw = a * b.transpose();

  const double sa = a.sum();
  const double sb = b.sum();
  Eigen::Vector3d da = sa > 0 ? Eigen::Vector3d(a / sa) : Eigen::Vector3d::Zero();
  Eigen::Vector3d db = sb > 0 ? Eigen::Vector3d(b / sb) : Eigen::Vector3d::Zero();
  out.normalized = da * db.transpose();
  return out;
}

QImages q_images(double q_a, double q_b) {
  QImages q;
  q.diag << q_a, 0.0, 0.0, q_b;
  const double ad = std::abs(q_a - q_b);
  q.absdiff << 0.0, ad, ad, 0.0;
  const double pr = q_a * q_b;
  q.prod << 0.0, pr, pr, 0.0;
  return q;
}

Eigen::MatrixXd upsample_bilinear(const Eigen::MatrixXd& src, int out) {
  const long h = src.rows();
  const long w = src.cols();
  if (h < 1 || w < 1 || out < 1)
    throw std::invalid_argument("upsample_bilinear: empty input");

  Eigen::MatrixXd dst(out, out);
  const double ri = out > 1 ? static_cast<double>(h - 1) / (out - 1) : 0.0;
  const double rj = out > 1 ? static_cast<double>(w - 1) / (out - 1) : 0.0;
  for (int i = 0; i < out; ++i) {
    const double y = i * ri;
    const long y0 = std::min(static_cast<long>(y), h - 1);
    const long y1 = std::min(y0 + 1, h - 1);
    const double fy = y - static_cast<double>(y0);
    for (int j = 0; j < out; ++j) {
      const double x = j * rj;
      const long x0 = std::min(static_cast<long>(x), w - 1);
      const long x1 = std::min(x0 + 1, w - 1);
      const double fx = x - static_cast<double>(x0);
      const double top = src(y0, x0) * (1.0 - fx) + src(y0, x1) * fx;
      const double bot = src(y1, x0) * (1.0 - fx) + src(y1, x1) * fx;
      dst(i, j) = top * (1.0 - fy) + bot * fy;
    }
  }
  return dst;
}

Eigen::MatrixXd upsample_nearest(const Eigen::MatrixXd& src, int out) {
  const long h = src.rows();
  const long w = src.cols();
  if (h < 1 || w < 1 || out < 1)
    throw std::invalid_argument("upsample_nearest: empty input");

  Eigen::MatrixXd dst(out, out);
  for (int i = 0; i < out; ++i) {
    const long si = (static_cast<long>(i) * h) / out;
    for (int j = 0; j < out; ++j) {
      const long sj = (static_cast<long>(j) * w) / out;
      dst(i, j) = src(si, sj);
    }
  }
  return dst;
}

namespace {

void store_channel(ImageTensor& t, int channel, const Eigen::MatrixXd& img) {
  for (int i = 0; i < ImageTensor::kSize; ++i)
    for (int j = 0; j < ImageTensor::kSize; ++j)
      t.at(channel, i, j) = static_cast<float>(img(i, j));
}

}  // namespace

ImageTensor encode_tensor(const DiatomicRecord& rec) {
  ImageTensor t;
  t.pair_id = rec.pair_id;

  store_channel(t, kChannelOmapA, upsample_nearest(omap(rec.populations_a)));
  store_channel(t, kChannelOmapB, upsample_nearest(omap(rec.populations_b)));

  const ShellVector raw_a = shell_sums(rec.populations_a);
  const ShellVector raw_b = shell_sums(rec.populations_b);
  const ShellVector norm_a = normalize_shells(raw_a);
  const ShellVector norm_b = normalize_shells(raw_b);

  store_channel(t, kChannelGafA, upsample_bilinear(gaf(norm_a)));
  store_channel(t, kChannelGafB, upsample_bilinear(gaf(norm_b)));
  store_channel(t, kChannelMtfA, upsample_bilinear(mtf(norm_a)));
  store_channel(t, kChannelMtfB, upsample_bilinear(mtf(norm_b)));

  const ComPair cp = com(raw_a, raw_b);
  store_channel(t, kChannelCom, upsample_bilinear(cp.raw));
  store_channel(t, kChannelComNorm, upsample_bilinear(cp.normalized));

  const QImages q = q_images(rec.gross_charge_a, rec.gross_charge_b);
  store_channel(t, kChannelQDiag, upsample_bilinear(q.diag));
  store_channel(t, kChannelQAbsDiff, upsample_bilinear(q.absdiff));
  return t;
}

}  // namespace qcanvas
