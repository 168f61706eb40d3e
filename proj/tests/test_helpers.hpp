#pragma once

#include <filesystem>
#include <random>
#include <string>

#include "qcanvas/scc.hpp"
#include "qcanvas/types.hpp"

namespace qcanvas::testing {

/// Minimal single-s element for fast engine tests.
inline ElementParams s_element(const std::string& symbol, double onsite,
                               double nval = 0.5, double hop = 0.4,
                               double u = 0.5) {
  ElementParams p;
  p.symbol = symbol;
  p.z = 1;
  p.shells = {Shell::s};
  p.onsite[0] = onsite;
  p.hubbard_u = u;
  p.n_valence = nval;
  p.hop_scale = hop;
  p.hop_decay = 1.3;
  p.overlap_scale = 0.22;
  p.overlap_decay = 1.5;
  p.rep_a = 1.5;
  p.rep_b = 1.9;
  return p;
}

/// s+p element, used where multi-shell populations matter.
inline ElementParams sp_element(const std::string& symbol, double onsite_s,
                                double onsite_p, double nval) {
  ElementParams p;
  p.symbol = symbol;
  p.z = 8;
  p.shells = {Shell::s, Shell::p};
  p.onsite[0] = onsite_s;
  p.onsite[1] = onsite_p;
  p.hubbard_u = 0.55;
  p.n_valence = nval;
  p.hop_scale = 0.45;
  p.hop_decay = 1.6;
  p.overlap_scale = 0.24;
  p.overlap_decay = 1.7;
  p.rep_a = 8.0;
  p.rep_b = 1.9;
  return p;
}

/// Relaxes a pair with the real engine and assembles the record.
inline DiatomicRecord solve_pair(const ElementParams& pa,
                                 const ElementParams& pb, double t_e = 0.02,
                                 double r0 = 2.5) {
  SccOptions sopts;
  sopts.mix = 0.1;
  RelaxResult rr = relax_geometry(pa, pb, r0, t_e, 0.0, RelaxOptions{}, sopts);
  return make_record(pa.symbol + "-" + pb.symbol, pa, pb, rr, t_e, 0.0);
}

/// Unique scratch directory under the system temp dir.
class TempDir {
 public:
  TempDir() {
    static std::mt19937_64 rng(std::random_device{}());
    path_ = std::filesystem::temp_directory_path() /
            ("qcanvas_test_" + std::to_string(rng()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  std::string file(const std::string& name) const {
    return (path_ / name).string();
  }

 private:
  std::filesystem::path path_;
};

}  // namespace qcanvas::testing
