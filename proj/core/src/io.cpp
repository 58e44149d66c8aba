#include "critic/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace critic::io {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  static const char* digits = "0123456789abcdef";
  for (int i = 15; i >= 0; --i) {
    buf[i] = digits[h & 0xf];
    h >>= 4;
  }
  buf[16] = '\0';
  return std::string(buf);
}

std::string sphere_point_json(const SpherePoint& p) {
  if (p.at_infinity) return "\"inf\"";
  return ordered_json::array({p.z.real(), p.z.imag()}).dump();
}

SpherePoint sphere_point_from_json(const std::string& text) {
  const ordered_json j = ordered_json::parse(text);
  if (j.is_string() && j.get<std::string>() == "inf") {
    return SpherePoint::infinity();
  }
  if (j.is_array() && j.size() == 2) {
    return SpherePoint(Complex{j[0].get<double>(), j[1].get<double>()});
  }
  throw std::runtime_error("bad sphere point");
}

namespace {

ordered_json complex_json(const Complex& z) {
  return ordered_json::array({z.real(), z.imag()});
}

Complex complex_from(const ordered_json& j) {
  if (!j.is_array() || j.size() != 2) throw std::runtime_error("bad complex");
  return Complex{j[0].get<double>(), j[1].get<double>()};
}

ordered_json direction_json(const Direction& d) {
  return ordered_json::array({complex_json(d.rep().v1), complex_json(d.rep().v2)});
}

}  // namespace

void write_orbit_jsonl(const OrbitSegment& orbit, std::ostream& out) {
  for (int n = orbit.n_min(); n <= orbit.n_max(); ++n) {
    ordered_json rec;
    rec["orbit"] = orbit.id();
    rec["n"] = n;
    rec["point"] = ordered_json::array(
        {complex_json(orbit.point(n)[0]), complex_json(orbit.point(n)[1])});
    if (n < orbit.n_max()) {
      const Mat2C& m = orbit.matrix(n);
      rec["matrix"] = ordered_json::array({complex_json(m.a), complex_json(m.b),
                                           complex_json(m.c), complex_json(m.d)});
    } else {
      rec["matrix"] = nullptr;
    }
    out << rec.dump() << '\n';
  }
}

void write_orbit_jsonl(const OrbitSegment& orbit, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  write_orbit_jsonl(orbit, out);
}

std::vector<OrbitSegment> read_orbits_jsonl(std::istream& in) {
  struct Raw {
    std::map<int, BasePoint> points;
    std::map<int, Mat2C> matrices;
  };
  std::map<std::string, Raw> raws;
  std::vector<std::string> order;

  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const ordered_json rec = ordered_json::parse(line);
    if (!rec.contains("orbit") || !rec.contains("n")) continue;  // header lines
    const std::string id = rec["orbit"].get<std::string>();
    if (!raws.count(id)) order.push_back(id);
    Raw& raw = raws[id];
    const int n = rec["n"].get<int>();
    raw.points[n] = {complex_from(rec["point"][0]), complex_from(rec["point"][1])};
    if (rec.contains("matrix") && !rec["matrix"].is_null()) {
      const auto& m = rec["matrix"];
      raw.matrices[n] = Mat2C{complex_from(m[0]), complex_from(m[1]),
                              complex_from(m[2]), complex_from(m[3])};
    }
  }

  std::vector<OrbitSegment> out;
  for (const std::string& id : order) {
    Raw& raw = raws[id];
    if (raw.points.empty()) continue;
    const int lo = raw.points.begin()->first;
    const int hi = raw.points.rbegin()->first;
    std::vector<BasePoint> points;
    std::vector<Mat2C> matrices;
    for (int n = lo; n <= hi; ++n) {
      if (!raw.points.count(n)) throw std::runtime_error("orbit has index gaps");
      points.push_back(raw.points[n]);
      if (n < hi) {
        if (!raw.matrices.count(n)) throw std::runtime_error("orbit missing matrix");
        matrices.push_back(raw.matrices[n]);
      }
    }
    out.emplace_back(id, lo, std::move(points), std::move(matrices));
  }
  return out;
}

std::vector<OrbitSegment> read_orbits_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_orbits_jsonl(in);
}

HenonMap read_henon_map(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  const ordered_json j = ordered_json::parse(in);
  std::vector<Complex> poly;
  for (const auto& c : j.at("poly")) poly.push_back(complex_from(c));
  return HenonMap(std::move(poly), complex_from(j.at("b")));
}

std::string henon_map_json(const HenonMap& map) {
  ordered_json j;
  j["poly"] = ordered_json::array();
  for (const Complex& c : map.poly()) j["poly"].push_back(complex_json(c));
  j["b"] = complex_json(map.b());
  return j.dump();
}

std::string certificate_json(const DominationCertificate& cert,
                             const std::string& config_hash) {
  ordered_json j;
  j["v"] = 1;
  j["kind"] = "domination-certificate";
  j["config_hash"] = config_hash;
  j["lambda"] = cert.lambda;
  j["C"] = cert.C;
  j["horizon"] = cert.horizon;
  j["slack"] = cert.slack;
  j["pass"] = cert.pass;
  j["per_point"] = ordered_json::array();
  for (const auto& p : cert.per_point) {
    ordered_json e;
    e["orbit"] = p.orbit_id;
    e["index"] = p.index;
    e["witness"] = direction_json(p.witness);
    e["min_margin"] = p.min_margin;
    e["pass"] = p.pass;
    j["per_point"].push_back(std::move(e));
  }
  return j.dump(2) + "\n";
}

namespace {

ordered_json report_json(const CriticalReport& r) {
  ordered_json e;
  e["orbit"] = r.orbit_id;
  e["index"] = r.index;
  e["direction"] = direction_json(r.direction);
  e["beta"] = ordered_json::array({r.beta.beta_minus, r.beta.beta_plus});
  e["times"] = ordered_json::array({r.n_minus, r.n_plus});
  e["horizon"] = r.horizon;
  e["min_margin_back"] = r.min_margin_back;
  e["min_margin_fwd"] = r.min_margin_fwd;
  e["inverse_cocycle"] = r.for_inverse_cocycle;
  return e;
}

}  // namespace

std::string critical_reports_json(const std::vector<CriticalReport>& reports,
                                  const std::string& config_hash) {
  ordered_json j;
  j["v"] = 1;
  j["kind"] = "critical-reports";
  j["config_hash"] = config_hash;
  j["count"] = reports.size();
  j["reports"] = ordered_json::array();
  for (const auto& r : reports) j["reports"].push_back(report_json(r));
  return j.dump(2) + "\n";
}

std::string critical_pair_json(const CriticalPair& pair,
                               const std::string& config_hash) {
  ordered_json j;
  j["v"] = 1;
  j["kind"] = "critical-pair";
  j["config_hash"] = config_hash;
  j["critical"] = report_json(pair.crit);
  j["value_index"] = pair.value_index;
  j["value_direction"] = direction_json(pair.value_direction);
  j["approach_times"] = pair.approach_times;
  j["approach_distance"] = pair.approach_distance;
  j["finite_horizon"] = pair.finite_horizon;
  return j.dump(2) + "\n";
}

std::string critical_summary_csv(const std::vector<CriticalSummaryRow>& rows) {
  std::ostringstream out;
  out << "orbit,index,beta_minus,beta_plus,pass,margin_back,margin_fwd\n";
  for (const auto& r : rows) {
    out << r.orbit_id << ',' << r.index << ',' << format_double(r.beta.beta_minus)
        << ',' << format_double(r.beta.beta_plus) << ',' << (r.pass ? 1 : 0) << ','
        << format_double(r.margin_back) << ',' << format_double(r.margin_fwd)
        << '\n';
  }
  return out.str();
}

std::string series_csv(const LogMultiplierSeries& series) {
  std::ostringstream out;
  out << "n,log_g\n";
  for (int n = -series.n_back; n <= series.n_fwd; ++n) {
    out << n << ',' << format_double(series.at(n)) << '\n';
  }
  return out.str();
}

RealSeq read_real_seq(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  const size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (text[first] == '[' || text[first] == '{')) {
    const ordered_json j = ordered_json::parse(text);
    RealSeq seq;
    if (j.is_array()) {
      for (const auto& v : j) seq.values.push_back(v.get<double>());
    } else {
      seq.offset = j.value("offset", 0);
      for (const auto& v : j.at("values")) seq.values.push_back(v.get<double>());
    }
    return seq;
  }

  // CSV lines "n,value"; a header line is skipped.
  std::map<int, double> entries;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    const size_t comma = line.find(',');
    if (comma == std::string::npos) continue;
    try {
      const int n = std::stoi(line.substr(0, comma));
      const double v = std::stod(line.substr(comma + 1));
      entries[n] = v;
    } catch (const std::exception&) {
      continue;  // header or junk line
    }
  }
  if (entries.empty()) throw std::runtime_error("no sequence entries in " + path.string());
  RealSeq seq;
  seq.offset = entries.begin()->first;
  int expect = seq.offset;
  for (const auto& [n, v] : entries) {
    if (n != expect++) throw std::runtime_error("sequence has index gaps");
    seq.values.push_back(v);
  }
  return seq;
}

}  // namespace critic::io
