#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcanvas/types.hpp"

namespace qcanvas {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed text input; line is 1-based.
struct ParseError : IoError {
  ParseError(const std::string& msg, size_t line_no)
      : IoError(msg), line(line_no) {}
  size_t line = 0;
};

struct QcimError : IoError {
  using IoError::IoError;
};
struct QcimBadMagic : QcimError {
  using QcimError::QcimError;
};
struct QcimBadVersion : QcimError {
  using QcimError::QcimError;
};
struct QcimTruncated : QcimError {
  using QcimError::QcimError;
};
struct QcimBadDims : QcimError {
  using QcimError::QcimError;
};

/// Parameter table: JSON document with an "elements" array. Rejects
/// duplicate symbols and invariant violations, naming the element.
std::vector<ElementParams> load_params(const std::string& path);

/// Record streams: one JSON object per line (UTF-8). Numbers use the
/// shortest round-trip decimal representation, so read(write(x)) == x.
void write_records(const std::vector<DiatomicRecord>& records,
                   const std::string& path);
std::vector<DiatomicRecord> read_records(const std::string& path);

/// Label table: CSV, one header row, fixed column order
/// (pair_id, elem_a, elem_b, then label_field_names()); sentinels as NA.
void write_labels(const std::vector<ScalarLabels>& labels,
                  const std::string& path);
std::vector<ScalarLabels> read_labels(const std::string& path);

/// QCIM binary tensor file, little-endian:
///   magic "QCIM" | u16 version=1 | u64 count | u32 dims[3]=10,32,32
///   per record: u16 id_len | id bytes | 10*32*32 f32 channel-major.
void write_tensors(const std::vector<ImageTensor>& tensors,
                   const std::string& path);
std::vector<ImageTensor> read_tensors(const std::string& path);

struct Manifest {
  std::string tool_version;
  std::string created_utc;  // the one field allowed to differ between runs
  std::string params_path;
  std::string params_sha256;
  double t_e_ha = 0.0;
  double charge_total = 0.0;
  double mix = 0.0;
  double eps_scc = 0.0;
  double eps_scf = 0.0;
  double eps_geom = 0.0;
  double eta_floor_ev = 0.0;
  std::string ip_ea_method = "koopmans";
  size_t pair_count = 0;
  std::vector<std::string> unconverged_pairs;
  std::vector<std::string> unbound_pairs;
  std::map<std::string, std::string> output_digests;  // path -> sha256
};

void write_manifest(const Manifest& m, const std::string& path);

/// Hex-encoded SHA-256 of a file's bytes.
std::string sha256_hex_file(const std::string& path);

/// Shortest decimal representation that round-trips the exact double.
std::string format_double(double v);

}  // namespace qcanvas
