#include "qcanvas/labels.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qcanvas/units.hpp"

namespace qcanvas {

FrontierLevels derive_frontier(const std::vector<double>& eigenvalues_ev,
                               double n_e) {
  const int n = static_cast<int>(eigenvalues_ev.size());
  const int homo = static_cast<int>(std::ceil(n_e - 1e-9));  // 1-based
  if (homo < 1 || homo > n)
    throw std::domain_error("derive_frontier: electron count out of range");

  FrontierLevels out;
  out.e_homo = eigenvalues_ev[static_cast<size_t>(homo - 1)];
  if (homo < n) {
    out.e_lumo = eigenvalues_ev[static_cast<size_t>(homo)];
    out.e_g = *out.e_lumo - out.e_homo;
  }
  return out;
}

IpEa koopmans_ip_ea(double e_homo, double e_lumo) {
  return {-e_homo, -e_lumo};
}

ConceptualDft conceptual_dft(double ip, double ea) {
  ConceptualDft d;
  d.chi = 0.5 * (ip + ea);
  d.eta = 0.5 * (ip - ea);
  d.mu_chem = -d.chi;
  if (std::abs(d.eta) > kEtaFloorEv) {
    d.softness = 1.0 / d.eta;
    d.omega = d.mu_chem * d.mu_chem / (2.0 * d.eta);
  }
  return d;
}

Dipole point_charge_dipole(double q_a, double q_b,
                           const std::array<double, 3>& pos_a,
                           const std::array<double, 3>& pos_b) {
  Dipole d;
  d.x = units::ebohr_to_debye(q_a * pos_a[0] + q_b * pos_b[0]);
  d.y = units::ebohr_to_debye(q_a * pos_a[1] + q_b * pos_b[1]);
  d.z = units::ebohr_to_debye(q_a * pos_a[2] + q_b * pos_b[2]);
  d.norm = std::sqrt(d.x * d.x + d.y * d.y + d.z * d.z);
  return d;
}

ChargeStats charge_statistics(double q_a, double q_b) {
  ChargeStats s;
  s.q_maxabs = std::max(std::abs(q_a), std::abs(q_b));
  s.q_absmean = 0.5 * (std::abs(q_a) + std::abs(q_b));
  const double q_bar = 0.5 * (q_a + q_b);
  s.q_std = std::sqrt(0.5 * ((q_a - q_bar) * (q_a - q_bar) +
                             (q_b - q_bar) * (q_b - q_bar)));
  return s;
}

ScalarLabels assemble_labels(const DiatomicRecord& rec) {
  ScalarLabels lab;
  lab.pair_id = rec.pair_id;
  lab.elem_a = rec.elem_a;
  lab.elem_b = rec.elem_b;

  const double n_e =
      std::accumulate(rec.occupations.begin(), rec.occupations.end(), 0.0);
  const FrontierLevels fl = derive_frontier(rec.eigenvalues, n_e);
  lab.e_homo = fl.e_homo;
  lab.e_lumo = fl.e_lumo;
  lab.e_g = fl.e_g;

  lab.e_fermi = rec.fermi_level;
  lab.e_band = rec.e_band;
  lab.e_rep = rec.e_rep;
  lab.e_tot = rec.e_tot;
  lab.mermin_f = rec.mermin_f;

  lab.ip = -lab.e_homo;
  if (fl.e_lumo) {
    const IpEa ie = koopmans_ip_ea(fl.e_homo, *fl.e_lumo);
    const ConceptualDft d = conceptual_dft(ie.ip, ie.ea);
    lab.ea = ie.ea;
    lab.chi = d.chi;
    lab.eta = d.eta;
    lab.mu_chem = d.mu_chem;
    lab.softness = d.softness;
    lab.omega = d.omega;
  }

  // the record's dipole was produced by point_charge_dipole at assembly
  lab.mu_x = rec.dipole[0];
  lab.mu_y = rec.dipole[1];
  lab.mu_z = rec.dipole[2];
  lab.mu_norm = std::sqrt(lab.mu_x * lab.mu_x + lab.mu_y * lab.mu_y +
                          lab.mu_z * lab.mu_z);

  lab.bond_r = rec.r_eq;

  const ChargeStats cs =
      charge_statistics(rec.gross_charge_a, rec.gross_charge_b);
  lab.q_maxabs = cs.q_maxabs;
  lab.q_absmean = cs.q_absmean;
  lab.q_std = cs.q_std;
  return lab;
}

}  // namespace qcanvas
