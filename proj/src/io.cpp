#include "qcanvas/io.hpp"

#include <openssl/evp.h>

#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace qcanvas {

using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open file for writing: " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path);
}

size_t line_of_offset(const std::string& text, size_t byte) {
  size_t line = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

double parse_double_field(const std::string& cell, size_t line) {
  double v = 0.0;
  auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (res.ec != std::errc() || res.ptr != cell.data() + cell.size())
    throw ParseError("bad numeric cell '" + cell + "'", line);
  return v;
}

}  // namespace

// ---- parameter tables ---------------------------------------------------

std::vector<ElementParams> load_params(const std::string& path) {
  const std::string text = read_file(path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("parameter table: ") + e.what(),
                     line_of_offset(text, e.byte));
  }
  if (!doc.is_object() || !doc.contains("elements") ||
      !doc["elements"].is_array())
    throw ParseError("parameter table: missing 'elements' array", 1);

  std::vector<ElementParams> table;
  std::map<std::string, bool> seen;
  for (const json& je : doc["elements"]) {
    ElementParams p;
    try {
      p.symbol = je.at("symbol").get<std::string>();
      p.z = je.at("z").get<int>();
      for (const json& sh : je.at("shells")) {
        auto s = shell_from_name(sh.get<std::string>());
        if (!s)
          throw IoError("element " + p.symbol + ": unknown shell '" +
                        sh.get<std::string>() + "'");
        p.shells.push_back(*s);
      }
      const json& onsite = je.at("onsite");
      for (Shell sh : p.shells) {
        const char* name = shell_name(sh);
        if (!onsite.contains(name))
          throw IoError("element " + p.symbol +
                        ": missing onsite energy for shell " + name);
        p.onsite[static_cast<size_t>(shell_l(sh))] = onsite[name].get<double>();
      }
      p.hubbard_u = je.at("hubbard_u").get<double>();
      p.n_valence = je.at("n_valence").get<double>();
      p.hop_scale = je.at("hop_scale").get<double>();
      p.hop_decay = je.at("hop_decay").get<double>();
      p.overlap_scale = je.at("overlap_scale").get<double>();
      p.overlap_decay = je.at("overlap_decay").get<double>();
      p.rep_a = je.at("rep_a").get<double>();
      p.rep_b = je.at("rep_b").get<double>();
    } catch (const json::exception& e) {
      throw IoError("parameter table: element entry " +
                    std::to_string(table.size()) + ": " + e.what());
    }

    const auto bad = validate_params(p);
    if (!bad.empty())
      throw IoError("parameter table: element " + p.symbol + ": " + bad[0]);
    if (seen.count(p.symbol))
      throw IoError("parameter table: duplicate element " + p.symbol);
    seen[p.symbol] = true;
    table.push_back(std::move(p));
  }
  if (table.empty()) throw IoError("parameter table: no elements");
  return table;
}

// ---- record streams (JSON lines) ----------------------------------------

namespace {

json populations_to_json(const OrbitalPopulations& pops) {
  json arr = json::array();
  for (const auto& e : pops.entries) arr.push_back({e.l, e.m, e.n});
  return arr;
}

OrbitalPopulations populations_from_json(const json& arr) {
  OrbitalPopulations pops;
  for (const json& e : arr)
    pops.entries.push_back(
        {e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<double>()});
  return pops;
}

json record_to_json(const DiatomicRecord& r) {
  json j;
  j["pair_id"] = r.pair_id;
  j["elem_a"] = r.elem_a;
  j["elem_b"] = r.elem_b;
  j["r_eq"] = r.r_eq;
  j["eigenvalues"] = r.eigenvalues;
  j["occupations"] = r.occupations;
  j["fermi_level"] = r.fermi_level;
  j["populations_a"] = populations_to_json(r.populations_a);
  j["populations_b"] = populations_to_json(r.populations_b);
  j["gross_charge_a"] = r.gross_charge_a;
  j["gross_charge_b"] = r.gross_charge_b;
  j["dipole"] = r.dipole;
  j["e_band"] = r.e_band;
  j["e_rep"] = r.e_rep;
  j["e_coul2"] = r.e_coul2;
  j["e_tot"] = r.e_tot;
  j["mermin_f"] = r.mermin_f;
  j["entropy"] = r.entropy;
  j["t_e"] = r.t_e;
  j["charge_total"] = r.charge_total;
  j["scc_iterations"] = r.scc_iterations;
  j["scc_residual"] = r.scc_residual;
  j["converged"] = r.converged;
  j["geom_status"] = r.geom_status;
  return j;
}

DiatomicRecord record_from_json(const json& j) {
  DiatomicRecord r;
  r.pair_id = j.at("pair_id").get<std::string>();
  r.elem_a = j.at("elem_a").get<std::string>();
  r.elem_b = j.at("elem_b").get<std::string>();
  r.r_eq = j.at("r_eq").get<double>();
  r.eigenvalues = j.at("eigenvalues").get<std::vector<double>>();
  r.occupations = j.at("occupations").get<std::vector<double>>();
  r.fermi_level = j.at("fermi_level").get<double>();
  r.populations_a = populations_from_json(j.at("populations_a"));
  r.populations_b = populations_from_json(j.at("populations_b"));
  r.gross_charge_a = j.at("gross_charge_a").get<double>();
  r.gross_charge_b = j.at("gross_charge_b").get<double>();
  r.dipole = j.at("dipole").get<std::array<double, 3>>();
  r.e_band = j.at("e_band").get<double>();
  r.e_rep = j.at("e_rep").get<double>();
  r.e_coul2 = j.at("e_coul2").get<double>();
  r.e_tot = j.at("e_tot").get<double>();
  r.mermin_f = j.at("mermin_f").get<double>();
  r.entropy = j.at("entropy").get<double>();
  r.t_e = j.at("t_e").get<double>();
  r.charge_total = j.at("charge_total").get<double>();
  r.scc_iterations = j.at("scc_iterations").get<int>();
  r.scc_residual = j.at("scc_residual").get<double>();
  r.converged = j.at("converged").get<bool>();
  r.geom_status = j.at("geom_status").get<std::string>();
  return r;
}

}  // namespace

void write_records(const std::vector<DiatomicRecord>& records,
                   const std::string& path) {
  std::string out;
  for (const DiatomicRecord& r : records) {
    out += record_to_json(r).dump();
    out += '\n';
  }
  write_file(path, out);
}

std::vector<DiatomicRecord> read_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open records file: " + path);
  std::vector<DiatomicRecord> records;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("records: ") + e.what(), line_no);
    }
    try {
      records.push_back(record_from_json(j));
    } catch (const json::exception& e) {
      std::string id = j.contains("pair_id") && j["pair_id"].is_string()
                           ? j["pair_id"].get<std::string>()
                           : "<unknown>";
      throw ParseError("records: pair " + id + ": " + e.what(), line_no);
    }
  }
  return records;
}

// ---- label tables (CSV) --------------------------------------------------

namespace {

std::string opt_cell(const std::optional<double>& v) {
  return v ? format_double(*v) : "NA";
}

std::optional<double> parse_opt_cell(const std::string& cell, size_t line) {
  if (cell == "NA") return std::nullopt;
  return parse_double_field(cell, line);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  cells.push_back(cur);
  return cells;
}

}  // namespace

void write_labels(const std::vector<ScalarLabels>& labels,
                  const std::string& path) {
  std::string out = "pair_id,elem_a,elem_b";
  for (const std::string& f : label_field_names()) out += "," + f;
  out += '\n';

  for (const ScalarLabels& l : labels) {
    out += l.pair_id + "," + l.elem_a + "," + l.elem_b;
    out += "," + opt_cell(l.e_g);
    out += "," + format_double(l.e_homo);
    out += "," + opt_cell(l.e_lumo);
    out += "," + format_double(l.e_fermi);
    out += "," + format_double(l.e_band);
    out += "," + format_double(l.e_rep);
    out += "," + format_double(l.e_tot);
    out += "," + format_double(l.mermin_f);
    out += "," + format_double(l.ip);
    out += "," + opt_cell(l.ea);
    out += "," + opt_cell(l.chi);
    out += "," + opt_cell(l.eta);
    out += "," + opt_cell(l.softness);
    out += "," + opt_cell(l.mu_chem);
    out += "," + opt_cell(l.omega);
    out += "," + format_double(l.mu_x);
    out += "," + format_double(l.mu_y);
    out += "," + format_double(l.mu_z);
    out += "," + format_double(l.mu_norm);
    out += "," + format_double(l.bond_r);
    out += "," + format_double(l.q_maxabs);
    out += "," + format_double(l.q_absmean);
    out += "," + format_double(l.q_std);
    out += '\n';
  }
  write_file(path, out);
}

std::vector<ScalarLabels> read_labels(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open label file: " + path);

  const size_t n_cols = 3 + label_field_names().size();
  std::string line;
  if (!std::getline(in, line)) throw ParseError("labels: empty file", 1);
  if (split_csv_line(line).size() != n_cols)
    throw ParseError("labels: header column count mismatch", 1);

  std::vector<ScalarLabels> labels;
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != n_cols)
      throw ParseError("labels: expected " + std::to_string(n_cols) +
                           " columns, got " + std::to_string(cells.size()),
                       line_no);
    ScalarLabels l;
    size_t k = 0;
    l.pair_id = cells[k++];
    l.elem_a = cells[k++];
    l.elem_b = cells[k++];
    l.e_g = parse_opt_cell(cells[k++], line_no);
    l.e_homo = parse_double_field(cells[k++], line_no);
    l.e_lumo = parse_opt_cell(cells[k++], line_no);
    l.e_fermi = parse_double_field(cells[k++], line_no);
    l.e_band = parse_double_field(cells[k++], line_no);
    l.e_rep = parse_double_field(cells[k++], line_no);
    l.e_tot = parse_double_field(cells[k++], line_no);
    l.mermin_f = parse_double_field(cells[k++], line_no);
    l.ip = parse_double_field(cells[k++], line_no);
    l.ea = parse_opt_cell(cells[k++], line_no);
    l.chi = parse_opt_cell(cells[k++], line_no);
    l.eta = parse_opt_cell(cells[k++], line_no);
    l.softness = parse_opt_cell(cells[k++], line_no);
    l.mu_chem = parse_opt_cell(cells[k++], line_no);
    l.omega = parse_opt_cell(cells[k++], line_no);
    l.mu_x = parse_double_field(cells[k++], line_no);
    l.mu_y = parse_double_field(cells[k++], line_no);
    l.mu_z = parse_double_field(cells[k++], line_no);
    l.mu_norm = parse_double_field(cells[k++], line_no);
    l.bond_r = parse_double_field(cells[k++], line_no);
    l.q_maxabs = parse_double_field(cells[k++], line_no);
    l.q_absmean = parse_double_field(cells[k++], line_no);
    l.q_std = parse_double_field(cells[k++], line_no);
    labels.push_back(std::move(l));
  }
  return labels;
}

// ---- QCIM binary tensors -------------------------------------------------

namespace {

constexpr char kMagic[4] = {'Q', 'C', 'I', 'M'};
constexpr uint16_t kVersion = 1;

void put_u16(std::string& b, uint16_t v) {
  b.push_back(static_cast<char>(v & 0xff));
  b.push_back(static_cast<char>((v >> 8) & 0xff));
}
void put_u32(std::string& b, uint32_t v) {
  for (int i = 0; i < 4; ++i) b.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
void put_u64(std::string& b, uint64_t v) {
  for (int i = 0; i < 8; ++i) b.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
void put_f32(std::string& b, float v) {
  put_u32(b, std::bit_cast<uint32_t>(v));
}

struct Cursor {
  const std::string& buf;
  size_t pos = 0;
  void need(size_t n) const {
    if (pos + n > buf.size())
      throw QcimTruncated("QCIM: truncated payload (need " +
                          std::to_string(n) + " bytes at offset " +
                          std::to_string(pos) + ")");
  }
  uint16_t u16() {
    need(2);
    uint16_t v = static_cast<uint8_t>(buf[pos]) |
                 (static_cast<uint16_t>(static_cast<uint8_t>(buf[pos + 1])) << 8);
    pos += 2;
    return v;
  }
  uint32_t u32() {
    need(4);
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
      v |= static_cast<uint32_t>(static_cast<uint8_t>(buf[pos + static_cast<size_t>(i)])) << (8 * i);
    pos += 4;
    return v;
  }
  uint64_t u64() {
    need(8);
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
      v |= static_cast<uint64_t>(static_cast<uint8_t>(buf[pos + static_cast<size_t>(i)])) << (8 * i);
    pos += 8;
    return v;
  }
  float f32() { return std::bit_cast<float>(u32()); }
  std::string bytes(size_t n) {
    need(n);
    std::string s = buf.substr(pos, n);
    pos += n;
    return s;
  }
};

}  // namespace

void write_tensors(const std::vector<ImageTensor>& tensors,
                   const std::string& path) {
  std::string b;
  b.append(kMagic, 4);
  put_u16(b, kVersion);
  put_u64(b, tensors.size());
  put_u32(b, ImageTensor::kChannels);
  put_u32(b, ImageTensor::kSize);
  put_u32(b, ImageTensor::kSize);
  for (const ImageTensor& t : tensors) {
    if (t.pair_id.size() > 0xffff)
      throw IoError("QCIM: pair_id longer than 65535 bytes");
    put_u16(b, static_cast<uint16_t>(t.pair_id.size()));
    b += t.pair_id;
    for (float v : t.data) put_f32(b, v);
  }
  write_file(path, b);
}

std::vector<ImageTensor> read_tensors(const std::string& path) {
  const std::string buf = read_file(path);
  Cursor c{buf};

  const std::string magic = c.bytes(4);
  if (std::memcmp(magic.data(), kMagic, 4) != 0)
    throw QcimBadMagic("QCIM: bad magic bytes");
  const uint16_t version = c.u16();
  if (version != kVersion)
    throw QcimBadVersion("QCIM: unsupported format version " +
                         std::to_string(version));
  const uint64_t count = c.u64();
  const uint32_t d0 = c.u32();
  const uint32_t d1 = c.u32();
  const uint32_t d2 = c.u32();
  if (d0 != ImageTensor::kChannels || d1 != ImageTensor::kSize ||
      d2 != ImageTensor::kSize)
    throw QcimBadDims("QCIM: unexpected dims " + std::to_string(d0) + "x" +
                      std::to_string(d1) + "x" + std::to_string(d2));

  std::vector<ImageTensor> tensors;
  tensors.reserve(count);
  for (uint64_t k = 0; k < count; ++k) {
    ImageTensor t;
    const uint16_t id_len = c.u16();
    t.pair_id = c.bytes(id_len);
    for (float& v : t.data) v = c.f32();
    tensors.push_back(std::move(t));
  }
  return tensors;
}

// ---- manifest --------------------------------------------------------

void write_manifest(const Manifest& m, const std::string& path) {
  json j;
  j["tool_version"] = m.tool_version;
  j["created_utc"] = m.created_utc;
  j["params"] = {{"path", m.params_path}, {"sha256", m.params_sha256}};
  j["conventions"] = {
      {"t_e_ha", m.t_e_ha},
      {"charge_total", m.charge_total},
      {"mix_alpha", m.mix},
      {"eps_scc", m.eps_scc},
      {"eps_scf", m.eps_scf},
      {"eps_geom", m.eps_geom},
      {"eta_floor_ev", m.eta_floor_ev},
      {"ip_ea_method", m.ip_ea_method},
      {"occupation_convention", "spin-orbital f in [0,1]"},
      {"upsampling", {{"omap", "nearest"}, {"other", "bilinear"}}},
      {"channel_map", channel_names()},
      {"units",
       {{"hartree_to_ev", 27.2114},
        {"bohr_to_angstrom", 0.529177},
        {"ebohr_to_debye", 2.541746}}}};
  j["pair_count"] = m.pair_count;
  j["unconverged_pairs"] = m.unconverged_pairs;
  j["unbound_pairs"] = m.unbound_pairs;
  j["output_digests"] = m.output_digests;
  write_file(path, j.dump(2) + "\n");
}

// ---- digests ---------------------------------------------------------

std::string sha256_hex_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file for digest: " + path);

  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx) throw IoError("digest context allocation failed");
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);

  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof(buf));
    const std::streamsize n = in.gcount();
    if (n > 0) EVP_DigestUpdate(ctx, buf, static_cast<size_t>(n));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, digest, &len);
  EVP_MD_CTX_free(ctx);

  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

}  // namespace qcanvas
