#include "qcanvas/types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qcanvas {

const char* shell_name(Shell sh) {
  switch (sh) {
    case Shell::s: return "s";
    case Shell::p: return "p";
    case Shell::d: return "d";
  }
  return "?";
}

std::optional<Shell> shell_from_name(const std::string& name) {
  if (name == "s") return Shell::s;
  if (name == "p") return Shell::p;
  if (name == "d") return Shell::d;
  return std::nullopt;
}

int ElementParams::orbital_count() const {
  int n = 0;
  for (Shell sh : shells) n += shell_orbital_count(sh);
  return n;
}

bool ElementParams::has_shell(int l) const {
  return std::any_of(shells.begin(), shells.end(),
                     [l](Shell sh) { return shell_l(sh) == l; });
}

std::vector<std::string> validate_params(const ElementParams& p) {
  std::vector<std::string> bad;
  if (p.symbol.empty()) bad.push_back("symbol empty");
  if (p.z < 1) bad.push_back("z < 1");
  if (p.shells.empty()) bad.push_back("shells empty");
  for (size_t i = 1; i < p.shells.size(); ++i) {
    if (shell_l(p.shells[i]) <= shell_l(p.shells[i - 1])) {
      bad.push_back("shells not strictly ascending");
      break;
    }
  }
  if (!(p.hubbard_u > 0)) bad.push_back("hubbard_u <= 0");
  if (!(p.hop_decay > 0)) bad.push_back("hop_decay <= 0");
  if (!(p.overlap_decay > 0)) bad.push_back("overlap_decay <= 0");
  if (!(p.overlap_scale >= 0 && p.overlap_scale < 1))
    bad.push_back("overlap_scale outside [0,1)");
  if (p.n_valence < 0) bad.push_back("n_valence negative");
  if (p.n_valence > 2.0 * p.orbital_count())
    bad.push_back("n_valence exceeds 2x orbital count");
  return bad;
}

double OrbitalPopulations::total() const {
  double t = 0.0;
  for (const Entry& e : entries) t += e.n;
  return t;
}

double OrbitalPopulations::shell_sum(int l) const {
  double t = 0.0;
  for (const Entry& e : entries)
    if (e.l == l) t += e.n;
  return t;
}

std::vector<Violation> validate_record(const DiatomicRecord& rec) {
  std::vector<Violation> v;

  for (size_t i = 1; i < rec.eigenvalues.size(); ++i) {
    if (rec.eigenvalues[i] < rec.eigenvalues[i - 1]) {
      v.push_back({"eigenvalues", "eigenvalues unsorted",
                   rec.eigenvalues[i - 1] - rec.eigenvalues[i]});
      break;
    }
  }

  for (double f : rec.occupations) {
    if (f < 0.0 || f > 1.0) {
      v.push_back({"occupations", "occupation outside [0,1]", f});
      break;
    }
  }

  // N_e is recoverable from the populations: the Mulliken trace identity
  // forces sum(f) == sum of gross populations.
  const double n_e = rec.populations_a.total() + rec.populations_b.total();
  const double f_sum =
      std::accumulate(rec.occupations.begin(), rec.occupations.end(), 0.0);
  if (std::abs(f_sum - n_e) > 1e-8)
    v.push_back({"occupations", "occupation sum", std::abs(f_sum - n_e)});

  if (rec.entropy < 0)
    v.push_back({"entropy", "entropy negative", rec.entropy});

  const double q_sum = rec.gross_charge_a + rec.gross_charge_b;
  if (std::abs(q_sum - rec.charge_total) > 1e-8)
    v.push_back({"gross_charge", "charge sum != system charge",
                 std::abs(q_sum - rec.charge_total)});

  for (const auto* pops : {&rec.populations_a, &rec.populations_b}) {
    for (const auto& e : pops->entries) {
      if (e.n < -1e-10) {
        v.push_back({pops == &rec.populations_a ? "populations_a"
                                                : "populations_b",
                     "negative orbital population", e.n});
      }
    }
  }

  return v;
}

const std::vector<std::string>& label_field_names() {
  static const std::vector<std::string> names = {
      "e_g",      "e_homo",   "e_lumo",  "e_fermi",  "e_band",
      "e_rep",    "e_tot",    "mermin_f", "ip",      "ea",
      "chi",      "eta",      "softness", "mu_chem", "omega",
      "mu_x",     "mu_y",     "mu_z",    "mu_norm",  "bond_r",
      "q_maxabs", "q_absmean", "q_std"};
  return names;
}

const std::array<const char*, 10>& channel_names() {
  static const std::array<const char*, 10> names = {
      "OMAP_A", "OMAP_B", "GAF_A",    "GAF_B",  "MTF_A",
      "MTF_B",  "COM",    "COM_NORM", "Q_DIAG", "Q_ABSDIFF"};
  return names;
}

}  // namespace qcanvas
