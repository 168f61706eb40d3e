#include <algorithm>
#include <cmath>

#include "qcanvas/labels.hpp"
#include "qcanvas/scc.hpp"
#include "qcanvas/units.hpp"

namespace qcanvas {

namespace {

constexpr double kInvPhi = 0.6180339887498949;
constexpr double kGrow = 1.618033988749895;

double fd_gradient(const std::function<double(double)>& energy, double r) {
  const double h = std::max(1e-4, 1e-6 * r);
  return (energy(r + h) - energy(r - h)) / (2.0 * h);
}

}  // namespace

Relax1dResult relax_1d(const std::function<double(double)>& energy, double r0,
                       const RelaxOptions& opts) {
  Relax1dResult out;
  int evals = 0;
  auto eval = [&](double r) {
    ++evals;
    return energy(r);
  };

  const double lo = opts.bracket_lo;
  const double hi = opts.bracket_hi;

  // Downhill bracketing with golden-ratio step expansion, clamped to the
  // search range. Exiting the range while still descending means there is
  // no interior minimum.
  double a = std::clamp(r0, lo, hi);
  double fa = eval(a);
  double step = 0.05 * std::max(1.0, a);

  double b = std::min(a + step, hi);
  double fb = eval(b);
  int dir = 1;
  if (fb > fa || b == a) {
    dir = -1;
    b = std::max(a - step, lo);
    fb = eval(b);
  }

  double xl, xh;
  if (fb > fa) {
    // r0 sits between two uphill neighbours; bracket it directly
    xl = std::max(a - step, lo);
    xh = std::min(a + step, hi);
  } else {
    for (;;) {
      step *= kGrow;
      const double c =
          dir > 0 ? std::min(b + step, hi) : std::max(b - step, lo);
      if (c == b) {
        // already at the wall and still descending
        out.r = b;
        out.energy = fb;
        out.status = GeomStatus::unbound;
        out.evaluations = evals;
        return out;
      }
      const double fc = eval(c);
      if (fc > fb) {
        xl = std::min(a, c);
        xh = std::max(a, c);
        break;
      }
      a = b;
      fa = fb;
      b = c;
      fb = fc;
      if ((dir > 0 && b >= hi) || (dir < 0 && b <= lo)) {
        out.r = b;
        out.energy = fb;
        out.status = GeomStatus::unbound;
        out.evaluations = evals;
        return out;
      }
      if (evals >= opts.max_steps) {
        out.r = b;
        out.energy = fb;
        out.status = GeomStatus::unbound;
        out.evaluations = evals;
        return out;
      }
    }
  }

  // Golden-section reduction; the gradient criterion decides termination.
  double x1 = xh - kInvPhi * (xh - xl);
  double x2 = xl + kInvPhi * (xh - xl);
  double f1 = eval(x1);
  double f2 = eval(x2);

  double width_target = 1e-6 * std::max(1.0, 0.5 * (xl + xh));
  for (;;) {
    while (xh - xl > width_target && evals < opts.max_steps) {
      if (f1 < f2) {
        xh = x2;
        x2 = x1;
        f2 = f1;
        x1 = xh - kInvPhi * (xh - xl);
        f1 = eval(x1);
      } else {
        xl = x1;
        x1 = x2;
        f1 = f2;
        x2 = xl + kInvPhi * (xh - xl);
        f2 = eval(x2);
      }
    }
    const double xm = f1 < f2 ? x1 : x2;
    evals += 2;
    if (std::abs(fd_gradient(energy, xm)) < opts.eps_geom ||
        width_target < 1e-11 || evals >= opts.max_steps) {
      out.r = xm;
      out.energy = f1 < f2 ? f1 : f2;
      out.status = GeomStatus::bound;
      out.evaluations = evals;
      return out;
    }
    width_target *= 0.01;
  }
}

RelaxResult relax_geometry(const ElementParams& pa, const ElementParams& pb,
                           double r0, double t_e, double charge_total,
                           const RelaxOptions& ropts, const SccOptions& sopts) {
  if (!(r0 > 0)) throw std::domain_error("relax_geometry: r0 must be positive");
  if (!(ropts.eps_geom > 0))
    throw std::domain_error("relax_geometry: eps_geom must be positive");

  RelaxResult out;
  auto energy = [&](double r) {
    SccResult s = scc_solve(pa, pb, r, t_e, charge_total, sopts);
    if (!s.converged) out.all_converged = false;
    return s.ledger.e_tot;
  };

  Relax1dResult line = relax_1d(energy, r0, ropts);
  out.r_eq = line.r;
  out.status = line.status;
  out.energy_evaluations = line.evaluations;
  out.final_scc = scc_solve(pa, pb, line.r, t_e, charge_total, sopts);
  if (!out.final_scc.converged) out.all_converged = false;
  return out;
}

DiatomicRecord make_record(const std::string& pair_id, const ElementParams& pa,
                           const ElementParams& pb, const RelaxResult& relax,
                           double t_e, double charge_total) {
  const SccResult& scc = relax.final_scc;
  DiatomicRecord rec;
  rec.pair_id = pair_id;
  rec.elem_a = pa.symbol;
  rec.elem_b = pb.symbol;
  rec.r_eq = units::bohr_to_angstrom(relax.r_eq);

  rec.eigenvalues.reserve(scc.state.eigenvalues.size());
  for (double e : scc.state.eigenvalues)
    rec.eigenvalues.push_back(units::hartree_to_ev(e));
  rec.occupations = scc.state.occupations;
  rec.fermi_level = units::hartree_to_ev(scc.state.fermi_level);

  rec.populations_a = scc.mulliken.populations_a;
  rec.populations_b = scc.mulliken.populations_b;
  rec.gross_charge_a = scc.mulliken.q_a;
  rec.gross_charge_b = scc.mulliken.q_b;

  const Dipole mu = point_charge_dipole(rec.gross_charge_a, rec.gross_charge_b,
                                        {0.0, 0.0, 0.0},
                                        {0.0, 0.0, relax.r_eq});
  rec.dipole = {mu.x, mu.y, mu.z};

  // Convert the ledger components, then rebuild the sums in eV so the
  // stored identities hold bit-exactly.
  rec.e_band = units::hartree_to_ev(scc.ledger.e_band);
  rec.e_coul2 = units::hartree_to_ev(scc.ledger.e_coul2);
  rec.e_rep = units::hartree_to_ev(scc.ledger.e_rep);
  rec.e_tot = rec.e_band + rec.e_coul2 + rec.e_rep;
  rec.entropy = scc.ledger.entropy;
  rec.t_e = units::hartree_to_ev(t_e);
  rec.mermin_f = rec.e_tot - rec.t_e * rec.entropy;

  rec.charge_total = charge_total;
  rec.scc_iterations = scc.state.iterations;
  rec.scc_residual = scc.state.residual;
  rec.converged = scc.converged && relax.all_converged;
  rec.geom_status = relax.status == GeomStatus::bound ? "bound" : "unbound";
  return rec;
}

}  // namespace qcanvas
