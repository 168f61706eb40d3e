#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <string>
#include <vector>

#include "qcanvas/eig.hpp"
#include "qcanvas/types.hpp"

namespace qcanvas {

/// Per-orbital bookkeeping for the dimer basis. Orbitals are grouped
/// contiguously by atom (A then B) and ordered by (l, m) within each atom.
struct BasisOrbital {
  int atom = 0;  // 0 = A, 1 = B
  int l = 0;
  int m = 0;
};

struct BasisMap {
  std::vector<BasisOrbital> orbitals;
  int n_orb() const { return static_cast<int>(orbitals.size()); }
  int atom_orbital_count(int atom) const;
};

BasisMap make_basis(const ElementParams& pa, const ElementParams& pb);

/// Klopman-Ohno charge-interaction kernel, Ha/e^2. gamma(u,u,0) = u and
/// gamma -> 1/r at long range.
double gamma_interaction(double u_a, double u_b, double r);

struct PairMatrices {
  Eigen::MatrixXd h;
  Eigen::MatrixXd s;
  BasisMap basis;
};

/// Builds H and S for the dimer at separation r (bohr) given the current
/// net-charge fluctuations dq = (dq_A, dq_B) in e. The on-site SCC shift
/// raises the levels of an atom that has gained electrons (dq < 0), i.e.
/// the shift enters with the population fluctuation -dq.
PairMatrices build_matrices(const ElementParams& pa, const ElementParams& pb,
                            double r, const std::array<double, 2>& dq);

/// Chemical potential conserving sum(f_i) = n_e. At t_e = 0 and integer
/// n_e, returns the midpoint of the frontier pair.
double find_fermi_level(const std::vector<double>& eigenvalues, double n_e,
                        double t_e);

/// Pointwise Fermi-Dirac occupation, overflow-safe; the t_e = 0 limit is a
/// step with f = 1/2 exactly at the chemical potential.
double fermi_occupation(double eps, double mu, double t_e);
std::vector<double> fermi_occupations(const std::vector<double>& eigenvalues,
                                      double mu, double t_e);

/// Occupations that conserve n_e exactly. At t_e = 0 levels exactly at the
/// chemical potential share the remaining electrons equally.
std::vector<double> occupations_conserving(
    const std::vector<double>& eigenvalues, double n_e, double t_e, double mu);

/// S = -sum_i [f ln f + (1-f) ln(1-f)], with 0 ln 0 = 0.
double electronic_entropy(const std::vector<double>& occupations);

struct MullikenResult {
  OrbitalPopulations populations_a;
  OrbitalPopulations populations_b;
  double gross_a = 0.0;   // gross atomic population, electrons
  double gross_b = 0.0;
  double q_a = 0.0;       // net charge = n_valence - gross, e
  double q_b = 0.0;
};

MullikenResult mulliken(const Eigen::MatrixXd& coeff,
                        const std::vector<double>& occupations,
                        const Eigen::MatrixXd& overlap, const BasisMap& basis,
                        double n_valence_a, double n_valence_b);

/// Born-Mayer pair repulsion with geometric amplitude and arithmetic decay
/// mixing.
double repulsive_energy(const ElementParams& pa, const ElementParams& pb,
                        double r);

struct SccOptions {
  double mix = 0.3;        // linear mixing weight on the new charges
  double eps_scc = 1e-8;   // max |dq^n - dq^{n-1}|, e
  double eps_scf = 1e-8;   // |E_tot^n - E_tot^{n-1}|, Ha
  int max_iter = 200;
};

struct SccState {
  std::array<double, 2> dq{};       // net-charge fluctuations, e
  std::vector<double> eigenvalues;  // Ha, ascending
  Eigen::MatrixXd coefficients;
  std::vector<double> occupations;
  double fermi_level = 0.0;         // Ha
  int iterations = 0;
  double residual = 0.0;
};

/// Ha except the dimensionless entropy. The sum identities hold bit-exactly
/// as stored.
struct EnergyLedger {
  double e_band = 0.0;
  double e_coul2 = 0.0;
  double e_rep = 0.0;
  double e_tot = 0.0;
  double entropy = 0.0;
  double mermin_f = 0.0;
};

EnergyLedger make_ledger(double e_band, double e_coul2, double e_rep,
                         double entropy, double t_e);

struct SccResult {
  SccState state;
  EnergyLedger ledger;
  MullikenResult mulliken;
  bool converged = false;
};

/// Full self-consistent charge cycle at fixed separation r (bohr).
/// Non-convergence after max_iter is reported in the result, not thrown.
SccResult scc_solve(const ElementParams& pa, const ElementParams& pb, double r,
                    double t_e, double charge_total,
                    const SccOptions& opts = {});

// ---- 1-D geometry relaxation ------------------------------------------

enum class GeomStatus { bound, unbound };

struct RelaxOptions {
  double eps_geom = 1e-4;     // |dE/dr| threshold, Ha/bohr
  double bracket_lo = 0.6;    // bohr
  double bracket_hi = 12.0;
  int max_steps = 400;        // cap on energy evaluations
};

struct Relax1dResult {
  double r = 0.0;
  double energy = 0.0;
  GeomStatus status = GeomStatus::bound;
  int evaluations = 0;
};

/// Line search on an arbitrary energy callback (the test seam): downhill
/// bracketing from r0 followed by golden-section reduction, terminated by
/// the central finite-difference gradient test.
Relax1dResult relax_1d(const std::function<double(double)>& energy, double r0,
                       const RelaxOptions& opts);

struct RelaxResult {
  double r_eq = 0.0;          // bohr
  SccResult final_scc;
  GeomStatus status = GeomStatus::bound;
  bool all_converged = true;  // false if any trial SCC failed to converge
  int energy_evaluations = 0;
};

RelaxResult relax_geometry(const ElementParams& pa, const ElementParams& pb,
                           double r0, double t_e, double charge_total,
                           const RelaxOptions& ropts = {},
                           const SccOptions& sopts = {});

/// Assembles the output record (eV/Angstrom/Debye) from a relaxed solve.
DiatomicRecord make_record(const std::string& pair_id, const ElementParams& pa,
                           const ElementParams& pb, const RelaxResult& relax,
                           double t_e, double charge_total);

}  // namespace qcanvas
