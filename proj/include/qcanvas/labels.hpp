#pragma once

#include <array>
#include <optional>
#include <vector>

#include "qcanvas/types.hpp"

namespace qcanvas {

struct FrontierLevels {
  double e_homo = 0.0;
  std::optional<double> e_lumo;  // empty when n_e fills all orbitals
  std::optional<double> e_g;
};

/// HOMO sits at 1-based index ceil(n_e) under aufbau spin-orbital filling.
FrontierLevels derive_frontier(const std::vector<double>& eigenvalues_ev,
                               double n_e);

/// Koopmans convention: I = -eps_HOMO, A = -eps_LUMO.
struct IpEa {
  double ip = 0.0;
  double ea = 0.0;
};
IpEa koopmans_ip_ea(double e_homo, double e_lumo);

/// Hardness floor below which softness and electrophilicity are emitted as
/// the undefined-metallic sentinel rather than huge finite numbers. eV.
inline constexpr double kEtaFloorEv = 1e-6;

struct ConceptualDft {
  double chi = 0.0;
  double eta = 0.0;
  double mu_chem = 0.0;
  std::optional<double> softness;
  std::optional<double> omega;
};
ConceptualDft conceptual_dft(double ip, double ea);

struct Dipole {
  double x = 0.0, y = 0.0, z = 0.0, norm = 0.0;  // Debye
};

/// Point-charge dipole, charges in e and positions in bohr.
Dipole point_charge_dipole(double q_a, double q_b,
                           const std::array<double, 3>& pos_a,
                           const std::array<double, 3>& pos_b);

struct ChargeStats {
  double q_maxabs = 0.0;
  double q_absmean = 0.0;
  double q_std = 0.0;
};
ChargeStats charge_statistics(double q_a, double q_b);

/// Maps a converged record to the full label vector. Sentinel outcomes
/// (no virtual level, metallic hardness) propagate as empty optionals.
ScalarLabels assemble_labels(const DiatomicRecord& rec);

}  // namespace qcanvas
