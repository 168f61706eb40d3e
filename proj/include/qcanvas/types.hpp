#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace qcanvas {

/// Angular momentum channels supported by the basis (l = 0, 1, 2).
enum class Shell : int { s = 0, p = 1, d = 2 };

inline int shell_l(Shell sh) { return static_cast<int>(sh); }
inline int shell_orbital_count(Shell sh) { return 2 * shell_l(sh) + 1; }
const char* shell_name(Shell sh);
std::optional<Shell> shell_from_name(const std::string& name);

/// Per-element toy tight-binding parameters. Energies in Hartree,
/// lengths in bohr; n_valence counts electrons under the spin-orbital
/// occupation convention (one electron fills one orbital).
struct ElementParams {
  std::string symbol;
  int z = 0;
  std::vector<Shell> shells;        // ascending l, no duplicates
  std::array<double, 3> onsite{};   // indexed by l, meaningful for present shells
  double hubbard_u = 0.0;
  double n_valence = 0.0;
  double hop_scale = 0.0;
  double hop_decay = 0.0;
  double overlap_scale = 0.0;
  double overlap_decay = 0.0;
  double rep_a = 0.0;
  double rep_b = 0.0;

  int orbital_count() const;
  bool has_shell(int l) const;
  double onsite_energy(int l) const { return onsite[static_cast<size_t>(l)]; }
};

/// Returns the list of invariant violations; empty means valid.
std::vector<std::string> validate_params(const ElementParams& p);

/// (l,m)-resolved gross orbital populations of one atom, ordered by
/// (l ascending, m ascending), one entry per basis orbital.
struct OrbitalPopulations {
  struct Entry {
    int l = 0;
    int m = 0;
    double n = 0.0;
  };
  std::vector<Entry> entries;

  double total() const;
  double shell_sum(int l) const;
};

/// One converged two-body system. Output units throughout: energies in
/// eV, distances in Angstrom, charges in e, dipole in Debye.
struct DiatomicRecord {
  std::string pair_id;
  std::string elem_a;
  std::string elem_b;
  double r_eq = 0.0;                    // Angstrom
  std::vector<double> eigenvalues;      // eV, ascending
  std::vector<double> occupations;      // f_i in [0,1]
  double fermi_level = 0.0;             // eV
  OrbitalPopulations populations_a;
  OrbitalPopulations populations_b;
  double gross_charge_a = 0.0;          // net Mulliken charge, e
  double gross_charge_b = 0.0;
  std::array<double, 3> dipole{};       // Debye
  double e_band = 0.0;                  // eV
  double e_rep = 0.0;
  double e_coul2 = 0.0;
  double e_tot = 0.0;
  double mermin_f = 0.0;
  double entropy = 0.0;                 // dimensionless, natural log
  double t_e = 0.0;                     // eV
  double charge_total = 0.0;            // system net charge, e
  int scc_iterations = 0;
  double scc_residual = 0.0;
  bool converged = false;
  std::string geom_status = "bound";    // "bound" | "unbound"
};

struct Violation {
  std::string field;
  std::string what;
  double magnitude = 0.0;
};

/// Checks every DiatomicRecord invariant; violations are data, not errors.
std::vector<Violation> validate_record(const DiatomicRecord& rec);

/// The full label vector in output units. Fields that can be undefined
/// (missing virtual level, metallic hardness) are optional and serialize
/// as the NA sentinel.
struct ScalarLabels {
  std::string pair_id;
  std::string elem_a;
  std::string elem_b;
  std::optional<double> e_g;        // eV
  double e_homo = 0.0;              // eV
  std::optional<double> e_lumo;     // eV
  double e_fermi = 0.0;             // eV
  double e_band = 0.0;
  double e_rep = 0.0;
  double e_tot = 0.0;
  double mermin_f = 0.0;
  double ip = 0.0;                  // eV
  std::optional<double> ea;
  std::optional<double> chi;
  std::optional<double> eta;
  std::optional<double> softness;   // 1/eV
  std::optional<double> mu_chem;
  std::optional<double> omega;
  double mu_x = 0.0;                // Debye
  double mu_y = 0.0;
  double mu_z = 0.0;
  double mu_norm = 0.0;
  double bond_r = 0.0;              // Angstrom
  double q_maxabs = 0.0;            // e
  double q_absmean = 0.0;
  double q_std = 0.0;
};

/// Label column order as published in the CSV schema.
const std::vector<std::string>& label_field_names();

/// Fixed 10-channel 32x32 image stack. Values are stored at 32-bit
/// precision (the on-disk payload width), channel-major then row-major.
struct ImageTensor {
  static constexpr int kChannels = 10;
  static constexpr int kSize = 32;

  std::string pair_id;
  std::vector<float> data = std::vector<float>(kChannels * kSize * kSize, 0.0f);

  float& at(int c, int i, int j) {
    return data[static_cast<size_t>((c * kSize + i) * kSize + j)];
  }
  float at(int c, int i, int j) const {
    return data[static_cast<size_t>((c * kSize + i) * kSize + j)];
  }
};

enum Channel : int {
  kChannelOmapA = 0,
  kChannelOmapB = 1,
  kChannelGafA = 2,
  kChannelGafB = 3,
  kChannelMtfA = 4,
  kChannelMtfB = 5,
  kChannelCom = 6,
  kChannelComNorm = 7,
  kChannelQDiag = 8,
  kChannelQAbsDiff = 9,
};

const std::array<const char*, 10>& channel_names();

}  // namespace qcanvas
