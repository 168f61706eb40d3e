#include "qcanvas/scc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace qcanvas {

int BasisMap::atom_orbital_count(int atom) const {
  int n = 0;
  for (const auto& o : orbitals)
    if (o.atom == atom) ++n;
  return n;
}

BasisMap make_basis(const ElementParams& pa, const ElementParams& pb) {
  BasisMap basis;
  const ElementParams* elems[2] = {&pa, &pb};
  for (int atom = 0; atom < 2; ++atom) {
    for (Shell sh : elems[atom]->shells) {
      const int l = shell_l(sh);
      for (int m = -l; m <= l; ++m) basis.orbitals.push_back({atom, l, m});
    }
  }
  return basis;
}

double gamma_interaction(double u_a, double u_b, double r) {
  if (!(u_a > 0) || !(u_b > 0))
    throw std::domain_error("gamma: Hubbard U must be positive");
  if (r < 0) throw std::domain_error("gamma: negative separation");
  const double b = 0.5 * (1.0 / u_a + 1.0 / u_b);
  return 1.0 / std::sqrt(r * r + b * b);
}

PairMatrices build_matrices(const ElementParams& pa, const ElementParams& pb,
                            double r, const std::array<double, 2>& dq) {
  if (!(r > 0)) throw std::domain_error("build_matrices: r must be positive");

  PairMatrices out;
  out.basis = make_basis(pa, pb);
  const int n = out.basis.n_orb();
  out.h = Eigen::MatrixXd::Zero(n, n);
  out.s = Eigen::MatrixXd::Identity(n, n);

  const ElementParams* elems[2] = {&pa, &pb};

  // gamma matrix over the two atoms
  const double g_aa = gamma_interaction(pa.hubbard_u, pa.hubbard_u, 0.0);
  const double g_bb = gamma_interaction(pb.hubbard_u, pb.hubbard_u, 0.0);
  const double g_ab = gamma_interaction(pa.hubbard_u, pb.hubbard_u, r);

  // On-site potential shift per atom. dq is the net-charge fluctuation, so
  // the population fluctuation entering the second-order term is -dq: an
  // atom that gained electrons (dq < 0) has its levels pushed up.
  const std::array<double, 2> dn = {-dq[0], -dq[1]};
  const std::array<double, 2> shift = {g_aa * dn[0] + g_ab * dn[1],
                                       g_ab * dn[0] + g_bb * dn[1]};

  // radial laws: geometric-mean prefactors and decay lengths
  const double t_pref = -std::sqrt(pa.hop_scale * pb.hop_scale);
  const double t_len = std::sqrt(pa.hop_decay * pb.hop_decay);
  const double s_pref = std::sqrt(pa.overlap_scale * pb.overlap_scale);
  const double s_len = std::sqrt(pa.overlap_decay * pb.overlap_decay);
  const double t_r = t_pref * std::exp(-r / t_len);
  const double s_r = s_pref * std::exp(-r / s_len);

  for (int mu = 0; mu < n; ++mu) {
    const auto& om = out.basis.orbitals[static_cast<size_t>(mu)];
    out.h(mu, mu) = elems[om.atom]->onsite_energy(om.l) + shift[static_cast<size_t>(om.atom)];
    for (int nu = mu + 1; nu < n; ++nu) {
      const auto& on = out.basis.orbitals[static_cast<size_t>(nu)];
      if (on.atom == om.atom) continue;  // on-site basis is orthonormal
      if (on.l != om.l || on.m != om.m) continue;  // sigma-channel toy rule
      const double s_mn = s_r;
      const double h_mn =
          t_r + 0.5 * s_mn * (shift[static_cast<size_t>(om.atom)] +
                              shift[static_cast<size_t>(on.atom)]);
      out.s(mu, nu) = out.s(nu, mu) = s_mn;
      out.h(mu, nu) = out.h(nu, mu) = h_mn;
    }
  }
  return out;
}

double fermi_occupation(double eps, double mu, double t_e) {
  if (t_e == 0.0) {
    if (eps < mu) return 1.0;
    if (eps > mu) return 0.0;
    return 0.5;
  }
  const double x = (eps - mu) / t_e;
  // evaluate on the side that keeps exp() bounded
  if (x >= 0) {
    const double e = std::exp(-x);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(x));
}

std::vector<double> fermi_occupations(const std::vector<double>& eigenvalues,
                                      double mu, double t_e) {
  std::vector<double> f(eigenvalues.size());
  for (size_t i = 0; i < eigenvalues.size(); ++i)
    f[i] = fermi_occupation(eigenvalues[i], mu, t_e);
  return f;
}

namespace {

double occupation_sum(const std::vector<double>& eps, double mu, double t_e) {
  double s = 0.0;
  for (double e : eps) s += fermi_occupation(e, mu, t_e);
  return s;
}

bool nearly_integer(double x) { return std::abs(x - std::round(x)) < 1e-9; }

}  // namespace

double find_fermi_level(const std::vector<double>& eigenvalues, double n_e,
                        double t_e) {
  const int n = static_cast<int>(eigenvalues.size());
  if (!(n_e > 0) || !(n_e < static_cast<double>(n)))
    throw std::domain_error("find_fermi_level: n_e outside (0, n_orb)");
  if (t_e < 0) throw std::domain_error("find_fermi_level: negative t_e");

  if (t_e == 0.0) {
    // step-function limit; index of the highest (partially) occupied level
    const int k = static_cast<int>(std::ceil(n_e - 1e-9));
    if (nearly_integer(n_e))
      return 0.5 * (eigenvalues[static_cast<size_t>(k - 1)] +
                    eigenvalues[static_cast<size_t>(k)]);
    return eigenvalues[static_cast<size_t>(k - 1)];
  }

  double lo = eigenvalues.front() - 40.0 * t_e - 1.0;
  double hi = eigenvalues.back() + 40.0 * t_e + 1.0;
  while (occupation_sum(eigenvalues, lo, t_e) > n_e) lo -= 10.0 * (hi - lo);
  while (occupation_sum(eigenvalues, hi, t_e) < n_e) hi += 10.0 * (hi - lo);

  // bisection on the monotone occupation sum
  double mu = 0.5 * (lo + hi);
  for (int it = 0; it < 500; ++it) {
    mu = 0.5 * (lo + hi);
    const double g = occupation_sum(eigenvalues, mu, t_e);
    if (std::abs(g - n_e) <= 1e-12) break;
    if (g < n_e)
      lo = mu;
    else
      hi = mu;
    if (hi - lo <= std::numeric_limits<double>::epsilon() *
                       (std::abs(lo) + std::abs(hi) + 1.0))
      break;
  }
  return mu;
}

std::vector<double> occupations_conserving(
    const std::vector<double>& eigenvalues, double n_e, double t_e,
    double mu) {
  if (t_e > 0.0) return fermi_occupations(eigenvalues, mu, t_e);

  // t_e = 0: aufbau filling; levels exactly at mu share the remainder.
  std::vector<double> f(eigenvalues.size(), 0.0);
  double filled = 0.0;
  int at_mu = 0;
  for (double e : eigenvalues) {
    if (e < mu)
      filled += 1.0;
    else if (e == mu)
      ++at_mu;
  }
  const double remainder = n_e - filled;
  for (size_t i = 0; i < eigenvalues.size(); ++i) {
    if (eigenvalues[i] < mu)
      f[i] = 1.0;
    else if (eigenvalues[i] == mu && at_mu > 0)
      f[i] = std::clamp(remainder / at_mu, 0.0, 1.0);
  }
  return f;
}

double electronic_entropy(const std::vector<double>& occupations) {
  double s = 0.0;
  for (double f : occupations) {
    if (!(f >= 0.0 && f <= 1.0))
      throw std::domain_error("electronic_entropy: occupation outside [0,1]");
    if (f > 0.0 && f < 1.0)
      s -= f * std::log(f) + (1.0 - f) * std::log(1.0 - f);
  }
  return s;
}

MullikenResult mulliken(const Eigen::MatrixXd& coeff,
                        const std::vector<double>& occupations,
                        const Eigen::MatrixXd& overlap, const BasisMap& basis,
                        double n_valence_a, double n_valence_b) {
  const int n = basis.n_orb();
  if (coeff.rows() != n || overlap.rows() != n ||
      static_cast<int>(occupations.size()) != coeff.cols())
    throw std::invalid_argument("mulliken: dimension mismatch");

  // density matrix P = C f C^T
  Eigen::VectorXd f =
      Eigen::Map<const Eigen::VectorXd>(occupations.data(),
                                        static_cast<long>(occupations.size()));
  Eigen::MatrixXd p = coeff * f.asDiagonal() * coeff.transpose();
  Eigen::MatrixXd ps = p * overlap;

  MullikenResult out;
  for (int mu = 0; mu < n; ++mu) {
    const auto& o = basis.orbitals[static_cast<size_t>(mu)];
    const double pop = ps(mu, mu);
    if (o.atom == 0) {
      out.populations_a.entries.push_back({o.l, o.m, pop});
      out.gross_a += pop;
    } else {
      out.populations_b.entries.push_back({o.l, o.m, pop});
      out.gross_b += pop;
    }
  }
  out.q_a = n_valence_a - out.gross_a;
  out.q_b = n_valence_b - out.gross_b;
  return out;
}

double repulsive_energy(const ElementParams& pa, const ElementParams& pb,
                        double r) {
  if (!(r > 0)) throw std::domain_error("repulsive_energy: r must be positive");
  return std::sqrt(pa.rep_a * pb.rep_a) *
         std::exp(-0.5 * (pa.rep_b + pb.rep_b) * r);
}

EnergyLedger make_ledger(double e_band, double e_coul2, double e_rep,
                         double entropy, double t_e) {
  EnergyLedger l;
  l.e_band = e_band;
  l.e_coul2 = e_coul2;
  l.e_rep = e_rep;
  l.e_tot = e_band + e_coul2 + e_rep;
  l.entropy = entropy;
  l.mermin_f = l.e_tot - t_e * entropy;
  return l;
}

SccResult scc_solve(const ElementParams& pa, const ElementParams& pb, double r,
                    double t_e, double charge_total, const SccOptions& opts) {
  if (!(opts.mix > 0 && opts.mix <= 1))
    throw std::domain_error("scc_solve: mixing weight outside (0,1]");
  if (!(opts.eps_scc > 0) || !(opts.eps_scf > 0))
    throw std::domain_error("scc_solve: tolerances must be positive");

  const double n_e = pa.n_valence + pb.n_valence - charge_total;
  const int n_orb = make_basis(pa, pb).n_orb();
  if (!(n_e > 0) || !(n_e < static_cast<double>(n_orb)))
    throw std::domain_error("scc_solve: electron count outside (0, n_orb)");

  const double g_aa = gamma_interaction(pa.hubbard_u, pa.hubbard_u, 0.0);
  const double g_bb = gamma_interaction(pb.hubbard_u, pb.hubbard_u, 0.0);
  const double g_ab = gamma_interaction(pa.hubbard_u, pb.hubbard_u, r);

  SccResult res;
  std::array<double, 2> dq = {0.5 * charge_total, 0.5 * charge_total};
  double e_prev = std::numeric_limits<double>::quiet_NaN();
  double e_rep = repulsive_energy(pa, pb, r);

  for (int iter = 1; iter <= opts.max_iter; ++iter) {
    PairMatrices m = build_matrices(pa, pb, r, dq);
    EigSolution eig = solve_generalized_eig(m.h, m.s);
    std::vector<double> eps(eig.eigenvalues.data(),
                            eig.eigenvalues.data() + eig.eigenvalues.size());
    const double mu = find_fermi_level(eps, n_e, t_e);
    std::vector<double> f = occupations_conserving(eps, n_e, t_e, mu);
    MullikenResult mk =
        mulliken(eig.coefficients, f, m.s, m.basis, pa.n_valence, pb.n_valence);

    const std::array<double, 2> dq_new = {mk.q_a, mk.q_b};
    const std::array<double, 2> dq_mixed = {
        (1.0 - opts.mix) * dq[0] + opts.mix * dq_new[0],
        (1.0 - opts.mix) * dq[1] + opts.mix * dq_new[1]};
    const double residual = std::max(std::abs(dq_mixed[0] - dq[0]),
                                     std::abs(dq_mixed[1] - dq[1]));

    double e_band = 0.0;
    for (size_t i = 0; i < f.size(); ++i) e_band += f[i] * eps[i];
    const double e_coul2 =
        0.5 * (g_aa * dq_mixed[0] * dq_mixed[0] +
               2.0 * g_ab * dq_mixed[0] * dq_mixed[1] +
               g_bb * dq_mixed[1] * dq_mixed[1]);
    const double entropy = electronic_entropy(f);
    EnergyLedger ledger = make_ledger(e_band, e_coul2, e_rep, entropy, t_e);

    res.state.dq = dq_mixed;
    res.state.eigenvalues = std::move(eps);
    res.state.coefficients = std::move(eig.coefficients);
    res.state.occupations = std::move(f);
    res.state.fermi_level = mu;
    res.state.iterations = iter;
    res.state.residual = residual;
    res.ledger = ledger;
    res.mulliken = std::move(mk);

    const bool charges_ok = residual < opts.eps_scc;
    // On the first iteration there is no previous energy; if the charges
    // did not move at all the Hamiltonian is already self-consistent.
    const bool energy_ok = std::isnan(e_prev)
                               ? residual == 0.0
                               : std::abs(ledger.e_tot - e_prev) < opts.eps_scf;
    if (charges_ok && energy_ok) {
      res.converged = true;
      return res;
    }
    e_prev = ledger.e_tot;
    dq = dq_mixed;
  }

  res.converged = false;
  return res;
}

}  // namespace qcanvas
