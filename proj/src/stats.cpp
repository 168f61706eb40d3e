#include "qcanvas/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qcanvas {

namespace {

// type-7 quantile: linear interpolation between closest ranks
double quantile_sorted(const std::vector<double>& x, double q) {
  const size_t n = x.size();
  if (n == 1) return x[0];
  const double h = q * static_cast<double>(n - 1);
  const size_t i = static_cast<size_t>(h);
  if (i + 1 >= n) return x[n - 1];
  return x[i] + (h - static_cast<double>(i)) * (x[i + 1] - x[i]);
}

struct KahanSum {
  double sum = 0.0;
  double c = 0.0;
  void add(double v) {
    const double y = v - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

std::optional<Summary> summarize(std::vector<double> values) {
  if (values.empty()) return std::nullopt;
  std::sort(values.begin(), values.end());

  Summary s;
  s.count = values.size();
  KahanSum acc;
  for (double v : values) acc.add(v);
  s.mean = acc.sum / static_cast<double>(s.count);
  KahanSum sq;
  for (double v : values) sq.add((v - s.mean) * (v - s.mean));
  s.stddev = std::sqrt(sq.sum / static_cast<double>(s.count));
  s.min = values.front();
  s.max = values.back();
  s.q1 = quantile_sorted(values, 0.25);
  s.median = quantile_sorted(values, 0.5);
  s.q3 = quantile_sorted(values, 0.75);
  return s;
}

PearsonMatrix pearson_matrix(
    const std::vector<std::string>& names,
    const std::vector<std::vector<std::optional<double>>>& columns) {
  if (names.size() != columns.size())
    throw std::invalid_argument("pearson_matrix: names/columns mismatch");

  // exclude targets that carry no signal
  std::vector<size_t> keep;
  PearsonMatrix out;
  for (size_t k = 0; k < columns.size(); ++k) {
    double mn = 0, mx = 0;
    size_t cnt = 0;
    for (const auto& v : columns[k]) {
      if (!v) continue;
      if (cnt == 0) mn = mx = *v;
      mn = std::min(mn, *v);
      mx = std::max(mx, *v);
      ++cnt;
    }
    if (cnt >= 2 && mx > mn)
      keep.push_back(k);
    else
      out.excluded_zero_variance.push_back(names[k]);
  }

  const size_t m = keep.size();
  out.r = Eigen::MatrixXd::Zero(static_cast<long>(m), static_cast<long>(m));
  for (size_t a = 0; a < m; ++a) out.targets.push_back(names[keep[a]]);

  for (size_t a = 0; a < m; ++a) {
    out.r(static_cast<long>(a), static_cast<long>(a)) = 1.0;
    for (size_t b = a + 1; b < m; ++b) {
      const auto& xa = columns[keep[a]];
      const auto& xb = columns[keep[b]];
      // pairwise-complete rows
      double sx = 0, sy = 0;
      size_t n = 0;
      for (size_t i = 0; i < xa.size(); ++i) {
        if (xa[i] && xb[i]) {
          sx += *xa[i];
          sy += *xb[i];
          ++n;
        }
      }
      double r_ab = 0.0;
      if (n >= 2) {
        const double mx = sx / static_cast<double>(n);
        const double my = sy / static_cast<double>(n);
        double cxy = 0, cxx = 0, cyy = 0;
        for (size_t i = 0; i < xa.size(); ++i) {
          if (xa[i] && xb[i]) {
            const double dx = *xa[i] - mx;
            const double dy = *xb[i] - my;
            cxy += dx * dy;
            cxx += dx * dx;
            cyy += dy * dy;
          }
        }
        if (cxx > 0 && cyy > 0) r_ab = cxy / std::sqrt(cxx * cyy);
      }
      out.r(static_cast<long>(a), static_cast<long>(b)) = r_ab;
      out.r(static_cast<long>(b), static_cast<long>(a)) = r_ab;
    }
  }
  return out;
}

std::map<std::pair<std::string, std::string>, GroupPairStats> group_aggregate(
    const std::vector<ScalarLabels>& labels,
    const std::map<std::string, std::string>& element_to_group) {
  auto group_of = [&](const std::string& sym) -> const std::string& {
    auto it = element_to_group.find(sym);
    if (it == element_to_group.end())
      throw std::runtime_error("group_aggregate: element '" + sym +
                               "' has no group mapping");
    return it->second;
  };

  std::map<std::pair<std::string, std::string>, GroupPairStats> agg;
  for (const ScalarLabels& row : labels) {
    std::string ga = group_of(row.elem_a);
    std::string gb = group_of(row.elem_b);
    if (gb < ga) std::swap(ga, gb);  // unordered key
    GroupPairStats& st = agg[{ga, gb}];
    ++st.count;
    st.mean_bond_r += row.bond_r;
    if (row.e_g) {
      ++st.gap_count;
      st.mean_gap += *row.e_g;
    }
  }
  for (auto& [key, st] : agg) {
    st.mean_bond_r /= static_cast<double>(st.count);
    if (st.gap_count > 0) st.mean_gap /= static_cast<double>(st.gap_count);
  }
  return agg;
}

Histogram bin_counts(const std::vector<double>& values,
                     const std::vector<double>& edges,
                     const std::vector<std::string>& labels) {
  for (size_t i = 1; i < edges.size(); ++i)
    if (!(edges[i] > edges[i - 1]))
      throw std::invalid_argument("bin_counts: edges not strictly increasing");
  if (labels.size() != edges.size() + 1)
    throw std::invalid_argument("bin_counts: need edges.size()+1 labels");

  Histogram h;
  h.labels = labels;
  h.counts.assign(labels.size(), 0);
  for (double v : values) {
    // first edge at or above v closes the bin: [e_{i-1}, e_i)
    const size_t bin = static_cast<size_t>(
        std::upper_bound(edges.begin(), edges.end(), v) - edges.begin());
    ++h.counts[bin];
  }
  return h;
}

std::array<ChannelStat, ImageTensor::kChannels> channel_statistics(
    const std::vector<ImageTensor>& tensors) {
  if (tensors.empty())
    throw std::invalid_argument("channel_statistics: empty tensor collection");

  std::array<ChannelStat, ImageTensor::kChannels> out{};
  const size_t px = ImageTensor::kSize * ImageTensor::kSize;
  for (int c = 0; c < ImageTensor::kChannels; ++c) {
    KahanSum sum;
    for (const ImageTensor& t : tensors)
      for (int i = 0; i < ImageTensor::kSize; ++i)
        for (int j = 0; j < ImageTensor::kSize; ++j)
          sum.add(static_cast<double>(t.at(c, i, j)));
    const double n = static_cast<double>(tensors.size() * px);
    const double mean = sum.sum / n;
    KahanSum sq;
    for (const ImageTensor& t : tensors)
      for (int i = 0; i < ImageTensor::kSize; ++i)
        for (int j = 0; j < ImageTensor::kSize; ++j) {
          const double d = static_cast<double>(t.at(c, i, j)) - mean;
          sq.add(d * d);
        }
    out[static_cast<size_t>(c)] = {mean, std::sqrt(sq.sum / n)};
  }
  return out;
}

}  // namespace qcanvas
