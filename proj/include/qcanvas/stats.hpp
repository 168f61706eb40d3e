#pragma once

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcanvas/types.hpp"

namespace qcanvas {

struct Summary {
  size_t count = 0;
  double mean = 0.0;
  double stddev = 0.0;  // population
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
};

/// Distribution summary with linearly interpolated quartiles; empty input
/// yields the distinct no-data outcome.
std::optional<Summary> summarize(std::vector<double> values);

/// Symmetric Pearson matrix over the non-constant targets; sentinel
/// entries are skipped pairwise, zero-variance targets are excluded and
/// reported rather than producing NaNs.
struct PearsonMatrix {
  std::vector<std::string> targets;
  Eigen::MatrixXd r;
  std::vector<std::string> excluded_zero_variance;
};
PearsonMatrix pearson_matrix(
    const std::vector<std::string>& names,
    const std::vector<std::vector<std::optional<double>>>& columns);

struct GroupPairStats {
  size_t count = 0;
  size_t gap_count = 0;   // rows contributing to mean_gap
  double mean_gap = 0.0;  // eV
  double mean_bond_r = 0.0;  // Angstrom
};

/// Aggregates labels by unordered element-group pair. Throws naming the
/// symbol if an element has no group mapping.
std::map<std::pair<std::string, std::string>, GroupPairStats> group_aggregate(
    const std::vector<ScalarLabels>& labels,
    const std::map<std::string, std::string>& element_to_group);

struct Histogram {
  std::vector<std::string> labels;
  std::vector<size_t> counts;
};

/// Half-open bins: (-inf, e0), [e0, e1), ..., [e_last, +inf). Requires
/// strictly increasing edges and labels.size() == edges.size() + 1.
Histogram bin_counts(const std::vector<double>& values,
                     const std::vector<double>& edges,
                     const std::vector<std::string>& labels);

struct ChannelStat {
  double mean = 0.0;
  double stddev = 0.0;  // population, over all pixels of all tensors
};

/// Per-channel statistics over every pixel, compensated accumulation.
std::array<ChannelStat, ImageTensor::kChannels> channel_statistics(
    const std::vector<ImageTensor>& tensors);

}  // namespace qcanvas
