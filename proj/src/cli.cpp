#include "qcanvas/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <set>
#include <thread>

#include "qcanvas/encoder.hpp"
#include "qcanvas/io.hpp"
#include "qcanvas/labels.hpp"
#include "qcanvas/scc.hpp"
#include "qcanvas/stats.hpp"
#include "qcanvas/version.hpp"

namespace qcanvas {

namespace {

using nlohmann::json;

std::string utc_now() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

int default_threads() {
  if (const char* env = std::getenv("QCANVAS_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return 1;
}

std::map<std::string, const ElementParams*> index_table(
    const std::vector<ElementParams>& table) {
  std::map<std::string, const ElementParams*> idx;
  for (const ElementParams& p : table) idx[p.symbol] = &p;
  return idx;
}

std::pair<std::string, std::string> canonical_pair(std::string a,
                                                   std::string b) {
  if (b < a) std::swap(a, b);
  return {std::move(a), std::move(b)};
}

std::string pair_id_of(const std::pair<std::string, std::string>& p) {
  return p.first + "-" + p.second;
}

/// Parses --pairs: "all", a file of one pair per line, or an inline
/// comma-separated list of A-B tokens. Duplicates collapse to the first
/// occurrence.
std::vector<std::pair<std::string, std::string>> resolve_pairs(
    const std::string& spec, const std::vector<ElementParams>& table) {
  std::vector<std::string> symbols;
  for (const ElementParams& p : table) symbols.push_back(p.symbol);

  if (spec == "all") return enumerate_all_pairs(symbols);

  std::vector<std::string> tokens;
  if (std::filesystem::exists(spec)) {
    std::ifstream in(spec);
    if (!in) throw IoError("cannot open pair list: " + spec);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty() && line[0] != '#') tokens.push_back(line);
    }
  } else {
    std::string cur;
    for (char c : spec) {
      if (c == ',' || c == ' ') {
        if (!cur.empty()) tokens.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (!cur.empty()) tokens.push_back(cur);
  }

  std::set<std::string> known(symbols.begin(), symbols.end());
  std::vector<std::pair<std::string, std::string>> pairs;
  std::set<std::string> seen;
  for (const std::string& tok : tokens) {
    const size_t dash = tok.find('-');
    if (dash == std::string::npos || dash == 0 || dash + 1 >= tok.size())
      throw IoError("bad pair token '" + tok + "' (expected A-B)");
    auto pr = canonical_pair(tok.substr(0, dash), tok.substr(dash + 1));
    for (const std::string& s : {pr.first, pr.second})
      if (!known.count(s))
        throw IoError("unknown element '" + s + "' in pair '" + tok + "'");
    if (seen.insert(pair_id_of(pr)).second) pairs.push_back(std::move(pr));
  }
  if (pairs.empty()) throw IoError("empty pair list");
  return pairs;
}

std::map<std::string, std::string> load_groups(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open groups file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw IoError(std::string("groups file: ") + e.what());
  }
  std::map<std::string, std::string> groups;
  for (auto it = j.begin(); it != j.end(); ++it)
    groups[it.key()] = it.value().get<std::string>();
  return groups;
}

std::optional<double> label_value(const ScalarLabels& l,
                                  const std::string& name) {
  if (name == "e_g") return l.e_g;
  if (name == "e_homo") return l.e_homo;
  if (name == "e_lumo") return l.e_lumo;
  if (name == "e_fermi") return l.e_fermi;
  if (name == "e_band") return l.e_band;
  if (name == "e_rep") return l.e_rep;
  if (name == "e_tot") return l.e_tot;
  if (name == "mermin_f") return l.mermin_f;
  if (name == "ip") return l.ip;
  if (name == "ea") return l.ea;
  if (name == "chi") return l.chi;
  if (name == "eta") return l.eta;
  if (name == "softness") return l.softness;
  if (name == "mu_chem") return l.mu_chem;
  if (name == "omega") return l.omega;
  if (name == "mu_x") return l.mu_x;
  if (name == "mu_y") return l.mu_y;
  if (name == "mu_z") return l.mu_z;
  if (name == "mu_norm") return l.mu_norm;
  if (name == "bond_r") return l.bond_r;
  if (name == "q_maxabs") return l.q_maxabs;
  if (name == "q_absmean") return l.q_absmean;
  if (name == "q_std") return l.q_std;
  throw std::invalid_argument("unknown label field " + name);
}

struct SimulateArgs {
  std::string params_path;
  std::string pairs_spec;
  std::string out_path;
  double t_e = 0.0;
  double charge_total = 0.0;
  double scc_tol = 1e-8;
  double scf_tol = 1e-8;
  double geom_tol = 1e-4;
  double mix = 0.3;
  double r0 = 2.5;
  int threads = default_threads();
  bool enumerate_only = false;
};

int cmd_simulate(const SimulateArgs& a) {
  const std::vector<ElementParams> table = load_params(a.params_path);
  const auto idx = index_table(table);
  const auto pairs = resolve_pairs(a.pairs_spec, table);

  if (a.enumerate_only) {
    std::cout << pairs.size() << " pairs\n";
    return kExitOk;
  }

  SccOptions sopts;
  sopts.mix = a.mix;
  sopts.eps_scc = a.scc_tol;
  sopts.eps_scf = a.scf_tol;
  RelaxOptions ropts;
  ropts.eps_geom = a.geom_tol;

  std::vector<DiatomicRecord> records(pairs.size());
  std::vector<std::string> failures(pairs.size());
  std::atomic<size_t> cursor{0};

  auto worker = [&]() {
    for (;;) {
      const size_t i = cursor.fetch_add(1);
      if (i >= pairs.size()) return;
      try {
        const ElementParams& pa = *idx.at(pairs[i].first);
        const ElementParams& pb = *idx.at(pairs[i].second);
        const RelaxResult rr =
            relax_geometry(pa, pb, a.r0, a.t_e, a.charge_total, ropts, sopts);
        records[i] =
            make_record(pair_id_of(pairs[i]), pa, pb, rr, a.t_e, a.charge_total);
      } catch (const std::exception& e) {
        failures[i] = e.what();
      }
    }
  };

  const int n_threads = std::max(1, a.threads);
  std::vector<std::thread> pool;
  for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  for (size_t i = 0; i < pairs.size(); ++i) {
    if (!failures[i].empty()) {
      std::cerr << "error: pair " << pair_id_of(pairs[i]) << ": "
                << failures[i] << "\n";
      return kExitData;
    }
  }

  write_records(records, a.out_path);

  Manifest m;
  m.tool_version = kToolVersion;
  m.created_utc = utc_now();
  m.params_path = a.params_path;
  m.params_sha256 = sha256_hex_file(a.params_path);
  m.t_e_ha = a.t_e;
  m.charge_total = a.charge_total;
  m.mix = a.mix;
  m.eps_scc = a.scc_tol;
  m.eps_scf = a.scf_tol;
  m.eps_geom = a.geom_tol;
  m.eta_floor_ev = kEtaFloorEv;
  m.pair_count = pairs.size();
  for (const DiatomicRecord& r : records) {
    if (!r.converged) m.unconverged_pairs.push_back(r.pair_id);
    if (r.geom_status == "unbound") m.unbound_pairs.push_back(r.pair_id);
  }
  m.output_digests[a.out_path] = sha256_hex_file(a.out_path);
  write_manifest(m, a.out_path + ".manifest.json");

  if (!m.unconverged_pairs.empty() || !m.unbound_pairs.empty()) {
    std::cerr << "warning: " << m.unconverged_pairs.size() << " unconverged, "
              << m.unbound_pairs.size() << " unbound pair(s); see manifest\n";
    return kExitPartial;
  }
  return kExitOk;
}

/// label/encode extend the simulate manifest with their output digests, so
/// a completed pipeline has digests for records, labels and tensors.
void record_output_digest(const std::string& records_path,
                          const std::string& out_path) {
  const std::string manifest_path = records_path + ".manifest.json";
  if (!std::filesystem::exists(manifest_path)) return;
  std::ifstream in(manifest_path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error&) {
    return;  // foreign manifest; leave it alone
  }
  in.close();
  j["output_digests"][out_path] = sha256_hex_file(out_path);
  std::ofstream out(manifest_path, std::ios::trunc);
  out << j.dump(2) << "\n";
}

int cmd_label(const std::string& records_path, const std::string& out_path,
              bool skip_unconverged) {
  const auto records = read_records(records_path);
  std::vector<ScalarLabels> labels;
  size_t skipped = 0;
  for (const DiatomicRecord& r : records) {
    if (!r.converged) {
      if (skip_unconverged) {
        ++skipped;
        continue;
      }
      std::cerr << "error: pair " << r.pair_id
                << " is unconverged (use --skip-unconverged to drop it)\n";
      return kExitData;
    }
    labels.push_back(assemble_labels(r));
  }
  if (skipped > 0)
    std::cerr << "warning: skipped " << skipped << " unconverged record(s)\n";
  write_labels(labels, out_path);
  record_output_digest(records_path, out_path);
  return kExitOk;
}

int cmd_encode(const std::string& records_path, const std::string& out_path) {
  const auto records = read_records(records_path);
  std::vector<ImageTensor> tensors;
  tensors.reserve(records.size());
  for (const DiatomicRecord& r : records) tensors.push_back(encode_tensor(r));
  write_tensors(tensors, out_path);
  record_output_digest(records_path, out_path);
  return kExitOk;
}

int cmd_stats(const std::string& labels_path, const std::string& tensors_path,
              const std::string& groups_path, const std::string& out_path) {
  const auto labels = read_labels(labels_path);
  if (labels.empty()) {
    std::cerr << "error: no label rows\n";
    return kExitData;
  }

  const auto& names = label_field_names();
  json report;
  report["record_count"] = labels.size();

  json jsum = json::object();
  json jexcl = json::object();
  std::vector<std::vector<std::optional<double>>> columns;
  for (const std::string& name : names) {
    std::vector<std::optional<double>> col;
    std::vector<double> present;
    for (const ScalarLabels& l : labels) {
      col.push_back(label_value(l, name));
      if (col.back()) present.push_back(*col.back());
    }
    jexcl[name] = labels.size() - present.size();
    if (auto s = summarize(present)) {
      jsum[name] = {{"count", s->count}, {"mean", s->mean},
                    {"std", s->stddev},  {"min", s->min},
                    {"q1", s->q1},       {"median", s->median},
                    {"q3", s->q3},       {"max", s->max}};
    } else {
      jsum[name] = "no-data";
    }
    columns.push_back(std::move(col));
  }
  report["targets"] = jsum;
  report["excluded_counts"] = jexcl;

  const PearsonMatrix pm = pearson_matrix(names, columns);
  json jp;
  jp["targets"] = pm.targets;
  jp["excluded_zero_variance"] = pm.excluded_zero_variance;
  json rows = json::array();
  for (long i = 0; i < pm.r.rows(); ++i) {
    json row = json::array();
    for (long j = 0; j < pm.r.cols(); ++j) row.push_back(pm.r(i, j));
    rows.push_back(row);
  }
  jp["matrix"] = rows;
  report["pearson"] = jp;

  // bond-length and dipole categories
  std::vector<double> bond, mu;
  for (const ScalarLabels& l : labels) {
    bond.push_back(l.bond_r);
    mu.push_back(l.mu_norm);
  }
  const Histogram hb = bin_counts(bond, {2.0, 3.0},
                                  {"short(<2A)", "medium(2-3A)", "long(>3A)"});
  const Histogram hm = bin_counts(
      mu, {1.0, 5.0}, {"weak(<1D)", "moderate(1-5D)", "strong(>5D)"});
  report["bins"] = {
      {"bond_r_angstrom",
       {{"edges", {2.0, 3.0}}, {"labels", hb.labels}, {"counts", hb.counts}}},
      {"dipole_debye",
       {{"edges", {1.0, 5.0}}, {"labels", hm.labels}, {"counts", hm.counts}}}};

  if (!groups_path.empty()) {
    const auto groups = load_groups(groups_path);
    const auto agg = group_aggregate(labels, groups);
    json jg = json::array();
    for (const auto& [key, st] : agg) {
      jg.push_back({{"group_a", key.first},
                    {"group_b", key.second},
                    {"count", st.count},
                    {"gap_count", st.gap_count},
                    {"mean_gap_ev", st.mean_gap},
                    {"mean_bond_r_angstrom", st.mean_bond_r}});
    }
    report["group_pairs"] = jg;
  }

  if (!tensors_path.empty()) {
    const auto tensors = read_tensors(tensors_path);
    const auto cs = channel_statistics(tensors);
    json jc = json::array();
    for (int c = 0; c < ImageTensor::kChannels; ++c)
      jc.push_back({{"channel", channel_names()[static_cast<size_t>(c)]},
                    {"mean", cs[static_cast<size_t>(c)].mean},
                    {"std", cs[static_cast<size_t>(c)].stddev}});
    report["channel_stats"] = jc;
  }

  std::ofstream out(out_path, std::ios::trunc);
  if (!out) throw IoError("cannot open report for writing: " + out_path);
  out << report.dump(2) << "\n";
  return kExitOk;
}

int cmd_validate(const std::string& records_path, const std::string& labels_path,
                 const std::string& tensors_path) {
  const auto records = read_records(records_path);
  int bad = 0;

  std::map<std::string, const DiatomicRecord*> by_id;
  for (const DiatomicRecord& r : records) {
    if (!by_id.emplace(r.pair_id, &r).second) {
      std::cerr << "validate: duplicate pair_id " << r.pair_id << "\n";
      ++bad;
    }
    for (const Violation& v : validate_record(r)) {
      std::cerr << "validate: " << r.pair_id << ": " << v.field << ": "
                << v.what << " (|" << v.magnitude << "|)\n";
      ++bad;
    }
    // stored ledger identities are bit-exact
    if (r.e_tot != r.e_band + r.e_coul2 + r.e_rep) {
      std::cerr << "validate: " << r.pair_id << ": e_tot != sum of parts\n";
      ++bad;
    }
    if (r.mermin_f != r.e_tot - r.t_e * r.entropy) {
      std::cerr << "validate: " << r.pair_id << ": mermin_f inconsistent\n";
      ++bad;
    }
  }

  if (!labels_path.empty()) {
    const auto labels = read_labels(labels_path);
    for (const ScalarLabels& l : labels) {
      auto it = by_id.find(l.pair_id);
      if (it == by_id.end()) {
        std::cerr << "validate: label row " << l.pair_id
                  << " has no matching record\n";
        ++bad;
        continue;
      }
      if (l.e_g && l.e_lumo && *l.e_g != *l.e_lumo - l.e_homo) {
        std::cerr << "validate: " << l.pair_id << ": gap != LUMO - HOMO\n";
        ++bad;
      }
      if (l.chi && l.mu_chem && *l.chi != -*l.mu_chem) {
        std::cerr << "validate: " << l.pair_id << ": chi != -mu_chem\n";
        ++bad;
      }
      if (l.softness && l.eta &&
          std::abs(*l.softness * *l.eta - 1.0) > 1e-9) {
        std::cerr << "validate: " << l.pair_id << ": softness*eta != 1\n";
        ++bad;
      }
      if (l.omega && l.eta && l.mu_chem) {
        const double mu2 = *l.mu_chem * *l.mu_chem;
        if (std::abs(2.0 * *l.eta * *l.omega - mu2) > 1e-9 * (1.0 + mu2)) {
          std::cerr << "validate: " << l.pair_id
                    << ": 2*eta*omega != mu_chem^2\n";
          ++bad;
        }
      }
      const double n2 = l.mu_x * l.mu_x + l.mu_y * l.mu_y + l.mu_z * l.mu_z;
      if (std::abs(l.mu_norm * l.mu_norm - n2) > 1e-10 * (1.0 + n2)) {
        std::cerr << "validate: " << l.pair_id << ": |mu| inconsistent\n";
        ++bad;
      }
      if (l.bond_r != it->second->r_eq) {
        std::cerr << "validate: " << l.pair_id << ": bond_r != record r_eq\n";
        ++bad;
      }
    }
  }

  if (!tensors_path.empty()) {
    const auto tensors = read_tensors(tensors_path);
    if (tensors.size() != records.size()) {
      std::cerr << "validate: tensor count " << tensors.size()
                << " != record count " << records.size() << "\n";
      ++bad;
    }
    const size_t n = std::min(tensors.size(), records.size());
    for (size_t i = 0; i < n; ++i) {
      if (tensors[i].pair_id != records[i].pair_id) {
        std::cerr << "validate: tensor " << i << " pair_id mismatch\n";
        ++bad;
      }
      for (float v : tensors[i].data) {
        if (!std::isfinite(v)) {
          std::cerr << "validate: tensor " << tensors[i].pair_id
                    << " has non-finite pixels\n";
          ++bad;
          break;
        }
      }
    }
  }

  if (bad > 0) {
    std::cerr << "validate: " << bad << " problem(s) found\n";
    return kExitData;
  }
  std::cout << "validate: ok (" << records.size() << " records)\n";
  return kExitOk;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> enumerate_all_pairs(
    std::vector<std::string> symbols) {
  std::sort(symbols.begin(), symbols.end());
  std::vector<std::pair<std::string, std::string>> pairs;
  pairs.reserve(symbols.size() * (symbols.size() + 1) / 2);
  for (size_t i = 0; i < symbols.size(); ++i)
    for (size_t j = i; j < symbols.size(); ++j)
      pairs.emplace_back(symbols[i], symbols[j]);
  return pairs;
}

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"two-body tight-binding dataset pipeline"};
  app.require_subcommand(1);

  SimulateArgs sim;
  CLI::App* simulate =
      app.add_subcommand("simulate", "relax pairs and write records");
  simulate->add_option("--params", sim.params_path, "parameter table (JSON)")
      ->required();
  simulate
      ->add_option("--pairs", sim.pairs_spec,
                   "'all', a file of A-B lines, or an inline A-B list")
      ->required();
  simulate->add_option("--te", sim.t_e, "electronic temperature (Ha)")
      ->required();
  simulate->add_option("--out", sim.out_path, "output records (JSONL)")
      ->required();
  simulate->add_option("--charge-total", sim.charge_total,
                       "total system charge (e)");
  simulate->add_option("--scc-tol", sim.scc_tol, "SCC charge tolerance (e)");
  simulate->add_option("--scf-tol", sim.scf_tol, "SCF energy tolerance (Ha)");
  simulate->add_option("--geom-tol", sim.geom_tol,
                       "geometry gradient tolerance (Ha/bohr)");
  simulate->add_option("--mix", sim.mix, "linear charge-mixing weight");
  simulate->add_option("--r0", sim.r0, "initial separation guess (bohr)");
  simulate->add_option("--threads", sim.threads,
                       "worker threads (default: QCANVAS_THREADS or 1)");
  simulate->add_flag("--enumerate-only", sim.enumerate_only,
                     "print the pair count and exit");

  std::string records_path, labels_path, tensors_path, groups_path, out_path;
  bool skip_unconverged = false;

  CLI::App* label = app.add_subcommand("label", "derive the label table");
  label->add_option("--records", records_path)->required();
  label->add_option("--out", out_path)->required();
  label->add_flag("--skip-unconverged", skip_unconverged,
                  "drop unconverged records instead of failing");

  CLI::App* encode = app.add_subcommand("encode", "build image tensors");
  encode->add_option("--records", records_path)->required();
  encode->add_option("--out", out_path)->required();

  CLI::App* stats = app.add_subcommand("stats", "dataset statistics report");
  stats->add_option("--labels", labels_path)->required();
  stats->add_option("--tensors", tensors_path);
  stats->add_option("--groups", groups_path, "element->group map (JSON)");
  stats->add_option("--out", out_path)->required();

  CLI::App* validate = app.add_subcommand("validate", "cross-check outputs");
  validate->add_option("--records", records_path)->required();
  validate->add_option("--labels", labels_path);
  validate->add_option("--tensors", tensors_path);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(sim);
    if (label->parsed())
      return cmd_label(records_path, out_path, skip_unconverged);
    if (encode->parsed()) return cmd_encode(records_path, out_path);
    if (stats->parsed())
      return cmd_stats(labels_path, tensors_path, groups_path, out_path);
    if (validate->parsed())
      return cmd_validate(records_path, labels_path, tensors_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace qcanvas
