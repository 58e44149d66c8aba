#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "critic/blocks.hpp"
#include "critic/critical.hpp"
#include "critic/henon.hpp"
#include "critic/orbit.hpp"
#include "critic/pliss.hpp"

namespace critic::io {

/// Shortest round-trip decimal form of a double, stable across runs.
std::string format_double(double x);

/// FNV-1a 64-bit hash, hex-encoded; used as the config fingerprint embedded
/// in every output.
std::string fnv1a_hex(const std::string& text);

/// Chart points serialize as "[re, im]" or the string "inf"; directions as
/// the canonical [v1, v2] pair of [re, im] pairs.
std::string sphere_point_json(const SpherePoint& p);
SpherePoint sphere_point_from_json(const std::string& text);

/// Orbit wire format: JSON Lines, one record per step
///   {"orbit": id, "n": int, "point": [[re,im],[re,im]],
///    "matrix": [[re,im],[re,im],[re,im],[re,im]]}
/// The terminal point is carried by a final record with "matrix": null.
void write_orbit_jsonl(const OrbitSegment& orbit, std::ostream& out);
void write_orbit_jsonl(const OrbitSegment& orbit, const std::filesystem::path& path);
std::vector<OrbitSegment> read_orbits_jsonl(std::istream& in);
std::vector<OrbitSegment> read_orbits_jsonl(const std::filesystem::path& path);

/// Map spec file: {"poly": [[re,im],...], "b": [re,im]}.
HenonMap read_henon_map(const std::filesystem::path& path);
std::string henon_map_json(const HenonMap& map);

/// Single-document JSON outputs, schema version "v": 1, with the config
/// fingerprint attached.
std::string certificate_json(const DominationCertificate& cert,
                             const std::string& config_hash);
std::string critical_reports_json(const std::vector<CriticalReport>& reports,
                                  const std::string& config_hash);
std::string critical_pair_json(const CriticalPair& pair,
                               const std::string& config_hash);

/// Summary CSV for batch criticality runs: index, pass, margin_back,
/// margin_fwd (one line per evaluated point/beta).
struct CriticalSummaryRow {
  std::string orbit_id;
  int index{0};
  Beta beta;
  bool pass{false};
  double margin_back{0.0};
  double margin_fwd{0.0};
};
std::string critical_summary_csv(const std::vector<CriticalSummaryRow>& rows);

/// Series export: CSV with header n,log_g.
std::string series_csv(const LogMultiplierSeries& series);

/// Sequences for the pliss tools: CSV lines "n,value" (any order) or a JSON
/// document {"offset": int, "values": [...]} / bare JSON array (offset 0).
RealSeq read_real_seq(const std::filesystem::path& path);

}  // namespace critic::io
