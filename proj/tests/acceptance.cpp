// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned in code next to each check.

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "qcanvas/cli.hpp"
#include "qcanvas/encoder.hpp"
#include "qcanvas/io.hpp"
#include "qcanvas/labels.hpp"
#include "qcanvas/scc.hpp"
#include "qcanvas/stats.hpp"

using namespace qcanvas;

namespace {

const std::string kDataDir = QCANVAS_DATA_DIR;

struct Failure {
  std::string detail;
};

#define REQUIRE_OR_FAIL(cond, msg)                  \
  do {                                              \
    if (!(cond)) throw Failure{msg};                \
  } while (0)

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{"cannot read " + path};
  return std::string(std::istreambuf_iterator<char>(in), {});
}

class Scratch {
 public:
  Scratch() {
    root_ = std::filesystem::temp_directory_path() /
            ("qcanvas_accept_" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(root_);
  }
  ~Scratch() {
    std::error_code ec;
    std::filesystem::remove_all(root_, ec);
  }
  std::string file(const std::string& name) const {
    return (root_ / name).string();
  }

 private:
  std::filesystem::path root_;
};

// ---- criterion bodies ----------------------------------------------------

/// Runs the CLI with stdout captured into a string.
std::pair<int, std::string> run_cli_captured(
    const std::vector<std::string>& args, const Scratch& scratch,
    const std::string& tag) {
  const std::string cap = scratch.file("stdout_" + tag + ".txt");
  std::fflush(stdout);
  const int saved = dup(fileno(stdout));
  FILE* f = std::freopen(cap.c_str(), "w", stdout);
  const int rc = f ? run_cli(args) : -1;
  std::fflush(stdout);
  dup2(saved, fileno(stdout));
  close(saved);
  return {rc, slurp(cap)};
}

void criterion_pair_count(const Scratch& scratch) {
  const auto big = load_params(kDataDir + "/params_span75.json");
  std::vector<std::string> symbols;
  for (const auto& p : big) symbols.push_back(p.symbol);
  REQUIRE_OR_FAIL(symbols.size() == 75, "span table must hold 75 symbols");
  REQUIRE_OR_FAIL(enumerate_all_pairs(symbols).size() == 2850,
                  "75 symbols must enumerate 2850 pairs");

  const auto toy = load_params(kDataDir + "/params_toy10.json");
  std::vector<std::string> toy_syms;
  for (const auto& p : toy) toy_syms.push_back(p.symbol);
  REQUIRE_OR_FAIL(enumerate_all_pairs(toy_syms).size() == 55,
                  "10 symbols must enumerate 55 pairs");

  // through the CLI itself
  auto [rc75, out75] = run_cli_captured(
      {"simulate", "--params", kDataDir + "/params_span75.json", "--pairs",
       "all", "--te", "0.02", "--enumerate-only", "--out",
       scratch.file("unused.jsonl")},
      scratch, "enum75");
  REQUIRE_OR_FAIL(rc75 == 0, "enumerate-only simulate failed");
  REQUIRE_OR_FAIL(out75.find("2850") != std::string::npos,
                  "cmd_simulate did not report 2850 pairs");
}

void criterion_eigensolver() {
  std::mt19937_64 rng(101);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 7);
    Eigen::MatrixXd a(n, n), b(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        a(i, j) = gauss(rng);
        b(i, j) = 0.3 * gauss(rng);
      }
    const Eigen::MatrixXd h = 0.5 * (a + a.transpose());
    const Eigen::MatrixXd s =
        Eigen::MatrixXd::Identity(n, n) + b * b.transpose();

    const auto sol = solve_generalized_eig(h, s);
    const Eigen::MatrixXd resid =
        h * sol.coefficients -
        s * sol.coefficients * sol.eigenvalues.asDiagonal();
    REQUIRE_OR_FAIL(
        resid.cwiseAbs().maxCoeff() <= 1e-8 * (1.0 + h.cwiseAbs().maxCoeff()),
        "eigen residual above 1e-8(1+|H|)");
    const Eigen::MatrixXd ortho =
        sol.coefficients.transpose() * s * sol.coefficients -
        Eigen::MatrixXd::Identity(n, n);
    REQUIRE_OR_FAIL(ortho.cwiseAbs().maxCoeff() <= 1e-8,
                    "S-orthonormality above 1e-8");

    if (n == 2) {
      // closed-form roots of det(H - eps S) = 0
      const double qa = s(0, 0) * s(1, 1) - s(0, 1) * s(1, 0);
      const double qb = -(h(0, 0) * s(1, 1) + h(1, 1) * s(0, 0) -
                          h(0, 1) * s(1, 0) - h(1, 0) * s(0, 1));
      const double qc = h(0, 0) * h(1, 1) - h(0, 1) * h(1, 0);
      double r1 = (-qb - std::sqrt(qb * qb - 4 * qa * qc)) / (2 * qa);
      double r2 = (-qb + std::sqrt(qb * qb - 4 * qa * qc)) / (2 * qa);
      if (r1 > r2) std::swap(r1, r2);
      REQUIRE_OR_FAIL(std::abs(sol.eigenvalues(0) - r1) <= 1e-10 &&
                          std::abs(sol.eigenvalues(1) - r2) <= 1e-10,
                      "2x2 closed-form mismatch above 1e-10");
    }
  }
}

void criterion_occupations() {
  std::mt19937_64 rng(103);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> utemp(1e-4, 0.3);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 11);
    std::vector<double> eps(static_cast<size_t>(n));
    for (double& e : eps) e = gauss(rng);
    std::sort(eps.begin(), eps.end());
    std::uniform_real_distribution<double> une(0.1, n - 0.1);
    const double n_e = une(rng);
    const double t = utemp(rng);

    const double mu = find_fermi_level(eps, n_e, t);
    const auto f = fermi_occupations(eps, mu, t);
    double sum = 0.0;
    for (double fi : f) sum += fi;
    REQUIRE_OR_FAIL(std::abs(sum - n_e) <= 1e-10,
                    "occupation sum off by more than 1e-10");
    REQUIRE_OR_FAIL(electronic_entropy(f) >= 0.0, "negative entropy");
  }

  REQUIRE_OR_FAIL(electronic_entropy({0.0, 1.0, 1.0, 0.0}) == 0.0,
                  "entropy must vanish at integer occupations");
  REQUIRE_OR_FAIL(fermi_occupation(0.37, 0.37, 0.05) == 0.5,
                  "f at the chemical potential must be exactly 1/2");
  const double t = 0.09;
  REQUIRE_OR_FAIL(
      std::abs(fermi_occupation(t * std::log(3.0), 0.0, t) - 0.25) <= 1e-12,
      "f((eps-mu)/T = ln 3) must be 1/4 within 1e-12");
}

ElementParams accept_element(const std::string& sym, double onsite,
                             double nval = 0.5, double hop = 0.4) {
  ElementParams p;
  p.symbol = sym;
  p.z = 1;
  p.shells = {Shell::s};
  p.onsite[0] = onsite;
  p.hubbard_u = 0.5;
  p.n_valence = nval;
  p.hop_scale = hop;
  p.hop_decay = 1.3;
  p.overlap_scale = 0.22;
  p.overlap_decay = 1.5;
  p.rep_a = 1.5;
  p.rep_b = 1.9;
  return p;
}

void criterion_mulliken() {
  std::mt19937_64 rng(107);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> uocc(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 7);
    Eigen::MatrixXd b(n, n), q(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        b(i, j) = 0.25 * gauss(rng);
        q(i, j) = gauss(rng);
      }
    const Eigen::MatrixXd s =
        Eigen::MatrixXd::Identity(n, n) + b * b.transpose();
    Eigen::LLT<Eigen::MatrixXd> llt(s);
    const Eigen::MatrixXd orth =
        Eigen::HouseholderQR<Eigen::MatrixXd>(q).householderQ();
    const Eigen::MatrixXd upper = llt.matrixU();
    const Eigen::MatrixXd coeff =
        upper.triangularView<Eigen::Upper>().solve(orth);

    std::vector<double> f(static_cast<size_t>(n));
    double f_sum = 0.0;
    for (double& fi : f) {
      fi = uocc(rng);
      f_sum += fi;
    }
    BasisMap basis;
    for (int i = 0; i < n; ++i)
      basis.orbitals.push_back({i < n / 2 ? 0 : 1, 0, 0});
    const auto mk = mulliken(coeff, f, s, basis, 1.0, 1.0);
    REQUIRE_OR_FAIL(std::abs(mk.gross_a + mk.gross_b - f_sum) <= 1e-8,
                    "Mulliken trace identity violated beyond 1e-8");
  }

  // homonuclear SCC symmetry
  std::uniform_real_distribution<double> uo(-0.5, -0.25);
  for (int trial = 0; trial < 5; ++trial) {
    const auto x = accept_element("X", uo(rng));
    const auto res = scc_solve(x, x, 2.0 + 0.3 * trial, 0.02, 0.0);
    REQUIRE_OR_FAIL(res.converged, "homonuclear SCC did not converge");
    REQUIRE_OR_FAIL(std::abs(res.mulliken.q_a - res.mulliken.q_b) <= 1e-10,
                    "homonuclear charge asymmetry above 1e-10");
  }
}

void criterion_ledger() {
  const auto table = load_params(kDataDir + "/params_toy10.json");
  SccOptions sopts;
  sopts.mix = 0.1;
  int checked = 0;
  for (size_t i = 0; i < table.size(); i += 3) {
    for (size_t j = i; j < table.size(); j += 4) {
      RelaxResult rr =
          relax_geometry(table[i], table[j], 2.5, 0.02, 0.0, {}, sopts);
      if (!rr.final_scc.converged) continue;
      const auto rec =
          make_record("t", table[i], table[j], rr, 0.02, 0.0);
      REQUIRE_OR_FAIL(rec.e_tot == rec.e_band + rec.e_coul2 + rec.e_rep,
                      "record e_tot identity not bit-exact");
      REQUIRE_OR_FAIL(rec.mermin_f == rec.e_tot - rec.t_e * rec.entropy,
                      "record mermin identity not bit-exact");
      const auto& l = rr.final_scc.ledger;
      REQUIRE_OR_FAIL(l.e_tot == l.e_band + l.e_coul2 + l.e_rep,
                      "ledger e_tot identity not bit-exact");
      ++checked;
    }
  }
  REQUIRE_OR_FAIL(checked >= 6, "not enough converged ledger samples");

  // gapped pair at t_e = 1e-6 Ha: F collapses onto E_tot
  const auto x = accept_element("X", -0.35);
  const auto res = scc_solve(x, x, 2.0, 1e-6, 0.0);
  REQUIRE_OR_FAIL(res.converged, "tiny-temperature solve did not converge");
  REQUIRE_OR_FAIL(std::abs(res.ledger.mermin_f - res.ledger.e_tot) <= 1e-6,
                  "mermin_f deviates from e_tot beyond 1e-6 Ha");
}

void criterion_geometry() {
  auto morse = [](double r) {
    const double t = 1.0 - std::exp(-(r - 2.0));
    return t * t;
  };
  const auto line = relax_1d(morse, 3.2, RelaxOptions{});
  REQUIRE_OR_FAIL(line.status == GeomStatus::bound,
                  "Morse relaxation lost the minimum");
  REQUIRE_OR_FAIL(std::abs(line.r - 2.0) <= 1e-3,
                  "Morse minimum off by more than 1e-3");

  const auto x = accept_element("X", -0.35);
  const auto r1 = relax_geometry(x, x, 1.5, 0.02, 0.0);
  const auto r2 = relax_geometry(x, x, 4.0, 0.02, 0.0);
  REQUIRE_OR_FAIL(r1.status == GeomStatus::bound &&
                      r2.status == GeomStatus::bound,
                  "toy pair must be bound");
  REQUIRE_OR_FAIL(std::abs(r1.r_eq - r2.r_eq) <= 1e-3,
                  "relaxation start-point dependence above 1e-3");

  double best_r = 0.0, best_e = 1e300;
  for (double r = 0.6; r <= 12.0; r += 1e-4) {
    const double e = scc_solve(x, x, r, 0.02, 0.0).ledger.e_tot;
    if (e < best_e) {
      best_e = e;
      best_r = r;
    }
  }
  REQUIRE_OR_FAIL(std::abs(r1.r_eq - best_r) <= 1e-3,
                  "grid-scan oracle disagrees beyond 1e-3 bohr");
}

void criterion_images() {
  std::mt19937_64 rng(109);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_real_distribution<double> uraw(0.0, 5.0);
  for (int trial = 0; trial < 10000; ++trial) {
    const ShellVector v{{u(rng), u(rng), u(rng)}};
    const auto g = gaf(v);
    for (int i = 0; i < 3; ++i) {
      REQUIRE_OR_FAIL(
          std::abs(g(i, i) -
                   (2 * v.p[static_cast<size_t>(i)] * v.p[static_cast<size_t>(i)] -
                    1)) <= 1e-12,
          "GAF diagonal identity violated");
      for (int j = 0; j < 3; ++j) {
        REQUIRE_OR_FAIL(g(i, j) == g(j, i), "GAF asymmetry");
        REQUIRE_OR_FAIL(g(i, j) >= -1.0 - 1e-12 && g(i, j) <= 1.0 + 1e-12,
                        "GAF out of range");
      }
    }

    const auto m = mtf(v);
    for (int r = 0; r < 3; ++r) {
      const double s = m.row(r).sum();
      REQUIRE_OR_FAIL(s == 1.0 || s == 0.0, "MTF row sum not in {0,1}");
    }

    const ShellVector ra{{uraw(rng), uraw(rng), uraw(rng)}};
    const ShellVector rb{{uraw(rng), uraw(rng), uraw(rng)}};
    const auto c = com(ra, rb);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = i + 1; k < 3; ++k)
          for (int l = j + 1; l < 3; ++l) {
            const double det =
                c.raw(i, j) * c.raw(k, l) - c.raw(i, l) * c.raw(k, j);
            const double scale = c.raw.cwiseAbs().maxCoeff();
            REQUIRE_OR_FAIL(std::abs(det) <= 1e-12 * (1.0 + scale * scale),
                            "COM 2x2 minor above 1e-12");
          }

    if (trial % 100 == 0) {
      const int h = 1 + static_cast<int>(rng() % 4);
      const int w = 1 + static_cast<int>(rng() % 4);
      Eigen::MatrixXd src(h, w);
      for (int i = 0; i < h; ++i)
        for (int j = 0; j < w; ++j) src(i, j) = uraw(rng);
      const auto big = upsample_bilinear(src);
      REQUIRE_OR_FAIL(big(0, 0) == src(0, 0) && big(31, 31) == src(h - 1, w - 1) &&
                          big(0, 31) == src(0, w - 1) && big(31, 0) == src(h - 1, 0),
                      "bilinear corners not exact");
    }
  }

  Eigen::MatrixXd src(2, 2);
  src << 0, 1, 2, 3;
  Eigen::MatrixXd want(3, 3);
  want << 0, 0.5, 1, 1, 1.5, 2, 2, 2.5, 3;
  REQUIRE_OR_FAIL(
      (upsample_bilinear(src, 3) - want).cwiseAbs().maxCoeff() <= 1e-12,
      "worked 2x2 -> 3x3 bilinear example off beyond 1e-12");
}

void criterion_conceptual_dft() {
  std::mt19937_64 rng(113);
  std::uniform_real_distribution<double> u(-12.0, 12.0);
  int used = 0;
  while (used < 10000) {
    double ip = u(rng), ea = u(rng);
    if (ip < ea) std::swap(ip, ea);
    if (ip - ea <= 2e-6) continue;
    ++used;
    const auto d = conceptual_dft(ip, ea);
    REQUIRE_OR_FAIL(d.chi == -d.mu_chem, "chi != -mu_chem");
    REQUIRE_OR_FAIL(d.softness && d.omega, "sentinel on a finite hardness");
    REQUIRE_OR_FAIL(std::abs(*d.softness * d.eta - 1.0) <= 1e-12,
                    "softness*eta deviates beyond 1e-12");
    const double mu2 = d.mu_chem * d.mu_chem;
    REQUIRE_OR_FAIL(std::abs(2.0 * d.eta * *d.omega - mu2) <=
                        1e-12 * (1.0 + mu2),
                    "2*eta*omega != mu^2 beyond 1e-12 relative");
  }
  const auto zero = conceptual_dft(3.3, 3.3);
  REQUIRE_OR_FAIL(!zero.softness && !zero.omega,
                  "eta = 0 must produce sentinels");
}

struct PipelineOutputs {
  std::string records, labels, tensors, report;
};

PipelineOutputs run_pipeline(const Scratch& scratch, const std::string& tag,
                             int threads) {
  PipelineOutputs out;
  out.records = scratch.file("rec_" + tag + ".jsonl");
  out.labels = scratch.file("lab_" + tag + ".csv");
  out.tensors = scratch.file("img_" + tag + ".qcim");
  out.report = scratch.file("rep_" + tag + ".json");
  const std::string params = kDataDir + "/params_toy10.json";
  REQUIRE_OR_FAIL(
      run_cli({"simulate", "--params", params, "--pairs", "all", "--te",
               "0.02", "--mix", "0.1", "--threads", std::to_string(threads),
               "--out", out.records}) == 0,
      "simulate failed");
  REQUIRE_OR_FAIL(run_cli({"label", "--records", out.records, "--out",
                           out.labels}) == 0,
                  "label failed");
  REQUIRE_OR_FAIL(run_cli({"encode", "--records", out.records, "--out",
                           out.tensors}) == 0,
                  "encode failed");
  REQUIRE_OR_FAIL(run_cli({"stats", "--labels", out.labels, "--tensors",
                           out.tensors, "--groups",
                           kDataDir + "/element_groups.json", "--out",
                           out.report}) == 0,
                  "stats failed");
  return out;
}

void criterion_determinism(const Scratch& scratch, PipelineOutputs& keep) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto a = run_pipeline(scratch, "a_t1", 1);
  const double single_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  const auto b = run_pipeline(scratch, "b_t1", 1);
  const auto c = run_pipeline(scratch, "c_t8", 8);
  const auto d = run_pipeline(scratch, "d_t8", 8);

  const std::string lab = slurp(a.labels);
  const std::string img = slurp(a.tensors);
  for (const auto* run : {&b, &c, &d}) {
    REQUIRE_OR_FAIL(slurp(run->labels) == lab,
                    "label bytes differ between runs");
    REQUIRE_OR_FAIL(slurp(run->tensors) == img,
                    "tensor bytes differ between runs");
  }
  REQUIRE_OR_FAIL(single_s < 60.0,
                  "single-threaded pipeline exceeded 60 s");
  keep = a;
}

void criterion_round_trips(const PipelineOutputs& io) {
  // records
  const auto records = read_records(io.records);
  REQUIRE_OR_FAIL(records.size() == 55, "expected 55 records");
  for (const auto& r : records) {
    if (!r.converged) continue;
    REQUIRE_OR_FAIL(r.e_tot == r.e_band + r.e_coul2 + r.e_rep,
                    "stored e_tot identity broken for " + r.pair_id);
    REQUIRE_OR_FAIL(r.mermin_f == r.e_tot - r.t_e * r.entropy,
                    "stored mermin identity broken for " + r.pair_id);
    REQUIRE_OR_FAIL(validate_record(r).empty(),
                    "record invariants broken for " + r.pair_id);
  }
  PipelineOutputs tmp;
  const std::string again = io.records + ".again";
  write_records(records, again);
  REQUIRE_OR_FAIL(slurp(again) == slurp(io.records),
                  "records round trip not byte-identical");

  const auto labels = read_labels(io.labels);
  const std::string lagain = io.labels + ".again";
  write_labels(labels, lagain);
  REQUIRE_OR_FAIL(slurp(lagain) == slurp(io.labels),
                  "labels round trip not byte-identical");

  const auto tensors = read_tensors(io.tensors);
  const std::string tagain = io.tensors + ".again";
  write_tensors(tensors, tagain);
  REQUIRE_OR_FAIL(slurp(tagain) == slurp(io.tensors),
                  "tensors round trip not byte-identical");

  // three distinct header errors
  const std::string good = slurp(io.tensors);
  auto corrupt = [&](std::string bytes, const std::string& name) {
    const std::string path = io.tensors + "." + name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    return path;
  };
  std::string bm = good;
  bm[0] = 'Z';
  bool ok = false;
  try {
    read_tensors(corrupt(bm, "magic"));
  } catch (const QcimBadMagic&) {
    ok = true;
  }
  REQUIRE_OR_FAIL(ok, "bad magic not reported as QcimBadMagic");

  std::string bv = good;
  bv[4] = 7;
  ok = false;
  try {
    read_tensors(corrupt(bv, "version"));
  } catch (const QcimBadVersion&) {
    ok = true;
  }
  REQUIRE_OR_FAIL(ok, "bad version not reported as QcimBadVersion");

  ok = false;
  try {
    read_tensors(corrupt(good.substr(0, good.size() - 64), "trunc"));
  } catch (const QcimTruncated&) {
    ok = true;
  }
  REQUIRE_OR_FAIL(ok, "truncation not reported as QcimTruncated");
}

void criterion_stats_oracle() {
  std::mt19937_64 rng(127);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::vector<std::optional<double>>> cols(4);
    std::vector<std::vector<double>> plain(4);
    for (int k = 0; k < 4; ++k) {
      cols[static_cast<size_t>(k)].resize(5);
      for (int i = 0; i < 5; ++i) {
        const double v = gauss(rng);
        cols[static_cast<size_t>(k)][static_cast<size_t>(i)] = v;
        plain[static_cast<size_t>(k)].push_back(v);
      }
    }
    const auto pm = pearson_matrix({"a", "b", "c", "d"}, cols);
    REQUIRE_OR_FAIL(pm.targets.size() == 4, "targets dropped unexpectedly");
    for (int x = 0; x < 4; ++x)
      for (int y = 0; y < 4; ++y) {
        double want = 1.0;
        if (x != y) {
          const auto& vx = plain[static_cast<size_t>(x)];
          const auto& vy = plain[static_cast<size_t>(y)];
          double mx = 0, my = 0;
          for (int i = 0; i < 5; ++i) {
            mx += vx[static_cast<size_t>(i)];
            my += vy[static_cast<size_t>(i)];
          }
          mx /= 5;
          my /= 5;
          double cxy = 0, cxx = 0, cyy = 0;
          for (int i = 0; i < 5; ++i) {
            cxy += (vx[static_cast<size_t>(i)] - mx) * (vy[static_cast<size_t>(i)] - my);
            cxx += (vx[static_cast<size_t>(i)] - mx) * (vx[static_cast<size_t>(i)] - mx);
            cyy += (vy[static_cast<size_t>(i)] - my) * (vy[static_cast<size_t>(i)] - my);
          }
          want = cxy / std::sqrt(cxx * cyy);
        }
        REQUIRE_OR_FAIL(std::abs(pm.r(x, y) - want) <= 1e-12,
                        "pearson deviates from the oracle beyond 1e-12");
      }
  }

  std::uniform_real_distribution<double> u(-5.0, 5.0);
  std::vector<double> vals(500);
  for (double& v : vals) v = u(rng);
  const auto h = bin_counts(vals, {-2.0, 1.0, 3.0}, {"a", "b", "c", "d"});
  size_t total = 0;
  for (size_t c : h.counts) total += c;
  REQUIRE_OR_FAIL(total == vals.size(), "bin counts do not sum to input size");

  std::uniform_real_distribution<float> uf(-1.0f, 1.0f);
  std::vector<ImageTensor> tensors(8);
  for (auto& t : tensors)
    for (float& v : t.data) v = uf(rng);
  auto shuffled = tensors;
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  const auto s1 = channel_statistics(tensors);
  const auto s2 = channel_statistics(shuffled);
  for (size_t c = 0; c < 10; ++c) {
    REQUIRE_OR_FAIL(std::abs(s1[c].mean - s2[c].mean) <= 1e-10,
                    "channel mean order-dependent beyond 1e-10");
    REQUIRE_OR_FAIL(std::abs(s1[c].stddev - s2[c].stddev) <= 1e-10,
                    "channel std order-dependent beyond 1e-10");
  }
}

}  // namespace

int main() {
  Scratch scratch;
  PipelineOutputs pipeline;

  struct Entry {
    int id;
    const char* name;
    double budget_s;  // 0 = no budget
    std::function<void()> run;
  };

  const std::vector<Entry> criteria = {
      {1, "pair-count reproduction (2850 / 55)", 1.0,
       [&] { criterion_pair_count(scratch); }},
      {2, "eigensolver oracle equivalence", 10.0, criterion_eigensolver},
      {3, "occupation/entropy suite", 0.0, criterion_occupations},
      {4, "Mulliken trace identity", 0.0, criterion_mulliken},
      {5, "energy ledger identities", 0.0, criterion_ledger},
      {6, "geometry oracle", 0.0, criterion_geometry},
      {7, "image invariant suite", 30.0, criterion_images},
      {8, "conceptual-DFT algebra", 0.0, criterion_conceptual_dft},
      {9, "end-to-end determinism", 0.0,
       [&] { criterion_determinism(scratch, pipeline); }},
      {10, "format round trips", 0.0, [&] { criterion_round_trips(pipeline); }},
      {11, "stats oracle", 0.0, criterion_stats_oracle},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool pass = true;
    try {
      c.run();
    } catch (const Failure& f) {
      pass = false;
      detail = f.detail;
    } catch (const std::exception& e) {
      pass = false;
      detail = std::string("exception: ") + e.what();
    }
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (pass && c.budget_s > 0 && dt > c.budget_s) {
      pass = false;
      detail = "runtime budget exceeded";
    }
    std::printf("%s  %2d  %-42s (%.2f s)%s%s\n", pass ? "PASS" : "FAIL", c.id,
                c.name, dt, detail.empty() ? "" : "  -- ", detail.c_str());
    if (!pass) ++failures;
  }
  if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
