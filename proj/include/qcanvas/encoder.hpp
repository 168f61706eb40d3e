#pragma once

#include <Eigen/Dense>
#include <array>

#include "qcanvas/types.hpp"

namespace qcanvas {

/// Shell populations P_l = sum_m n_{lm} for l = 0, 1, 2 (absent shells
/// contribute zero).
struct ShellVector {
  std::array<double, 3> p{};
};

ShellVector shell_sums(const OrbitalPopulations& pops);

/// Min-max normalization over the three shells; a degenerate range maps
/// every shell to 0.5 so the angular encoding stays well-defined.
ShellVector normalize_shells(const ShellVector& raw);

/// Gramian angular field of the normalized shell vector: G[i,j] =
/// cos(phi_i + phi_j), phi = arccos(p~).
Eigen::Matrix3d gaf(const ShellVector& normalized);

/// Markov transition field over the rank-quantized (Q = 3) shell sequence;
/// rows with no outgoing transition stay all-zero.
Eigen::Matrix3d mtf(const ShellVector& normalized);

/// 3x5 orbital-population tile, tile(l, m+2) = n_{lm}. Rejects l > 2.
Eigen::Matrix<double, 3, 5> omap(const OrbitalPopulations& pops);

/// Co-occupancy outer product of raw shell sums, plus its normalized
/// variant (outer product of per-atom shell distributions).
struct ComPair {
  Eigen::Matrix3d raw;
  Eigen::Matrix3d normalized;
};
ComPair com(const ShellVector& raw_a, const ShellVector& raw_b);

struct QImages {
  Eigen::Matrix2d diag;
  Eigen::Matrix2d absdiff;
  Eigen::Matrix2d prod;
};
QImages q_images(double q_a, double q_b);

/// Corner-aligned bilinear interpolation onto an out x out grid; the four
/// source corners are reproduced exactly.
Eigen::MatrixXd upsample_bilinear(const Eigen::MatrixXd& src, int out = 32);

/// Nearest-neighbour block replication onto an out x out grid.
Eigen::MatrixXd upsample_nearest(const Eigen::MatrixXd& src, int out = 32);

/// Assembles the full 10-channel tensor for one record. Deterministic:
/// identical input yields a bit-identical tensor.
ImageTensor encode_tensor(const DiatomicRecord& rec);

}  // namespace qcanvas
