#include "commands.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "critic/io.hpp"
#include "critic/parallel.hpp"

namespace critic::cli {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

int RunConfig::threads_resolved() const {
  if (threads) return std::max(1, *threads);
  if (const char* env = std::getenv("COCYCLE_CRITIC_THREADS")) {
    try {
      return std::max(1, std::stoi(env));
    } catch (const std::exception&) {
    }
  }
  return 1;
}

std::string RunConfig::config_hash() const {
  std::ostringstream s;
  s << "command=" << command;
  auto add = [&](const char* key, const auto& opt) {
    if (opt) s << '|' << key << '=' << *opt;
  };
  add("map", map_file);
  add("orbit", orbit_file);
  add("julia", julia_file);
  add("seq", seq_file);
  add("K", K);
  add("N", N);
  add("slack", slack);
  add("beta-grid", beta_grid);
  add("seed", seed);
  add("grid-n", grid_n);
  add("iters", iters);
  add("R", radius);
  add("lambda", lambda);
  add("C", C);
  add("periods", periods);
  add("gamma0", gamma0);
  add("gamma1", gamma1);
  return io::fnv1a_hex(s.str());
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  const ordered_json j = ordered_json::parse(in);
  auto fill_str = [&](const char* key, std::optional<std::string>& slot) {
    if (!slot && j.contains(key)) slot = j[key].get<std::string>();
  };
  auto fill_int = [&](const char* key, std::optional<int>& slot) {
    if (!slot && j.contains(key)) slot = j[key].get<int>();
  };
  auto fill_dbl = [&](const char* key, std::optional<double>& slot) {
    if (!slot && j.contains(key)) slot = j[key].get<double>();
  };
  fill_str("map", cfg.map_file);
  fill_str("orbit", cfg.orbit_file);
  fill_str("julia", cfg.julia_file);
  fill_str("seq", cfg.seq_file);
  fill_int("K", cfg.K);
  fill_int("N", cfg.N);
  fill_dbl("slack", cfg.slack);
  fill_str("beta-grid", cfg.beta_grid);
  fill_str("out", cfg.out_dir);
  fill_int("threads", cfg.threads);
  fill_int("seed", cfg.seed);
  fill_int("grid-n", cfg.grid_n);
  fill_int("iters", cfg.iters);
  fill_dbl("R", cfg.radius);
  fill_dbl("lambda", cfg.lambda);
  fill_dbl("C", cfg.C);
  fill_int("periods", cfg.periods);
  fill_dbl("gamma0", cfg.gamma0);
  fill_dbl("gamma1", cfg.gamma1);
}

std::vector<Beta> parse_beta_grid(const std::string& text) {
  std::vector<Beta> out;
  std::istringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (item.empty()) continue;
    const size_t colon = item.find(':');
    if (colon == std::string::npos) {
      throw std::runtime_error("beta grid entries must look like b-:b+");
    }
    out.emplace_back(std::stod(item.substr(0, colon)),
                     std::stod(item.substr(colon + 1)));
  }
  if (out.empty()) throw std::runtime_error("beta grid is empty");
  return out;
}

namespace {

constexpr const char* kDefaultBetaGrid = "0.9:0.7,0.95:0.65,0.8:0.7";

fs::path ensure_out_dir(const RunConfig& cfg) {
  const fs::path dir = cfg.out_or(".");
  fs::create_directories(dir);
  return dir;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << text;
}

struct OrbitSet {
  std::vector<OrbitSegment> orbits;
  int sampled_skipped{0};
  int sink_warnings{0};
};

/// Working set for the detectors: orbits from --orbit verbatim, otherwise
/// Henon orbits through the Julia sample plus the Newton periodic cycles
/// (built exactly, so they stay bounded over any window; grid survivors at
/// strongly hyperbolic parameters are typically none).
OrbitSet gather_orbits(const RunConfig& cfg, int n_back, int n_fwd) {
  OrbitSet set;
  if (cfg.orbit_file) {
    set.orbits = io::read_orbits_jsonl(fs::path(*cfg.orbit_file));
    return set;
  }
  if (!cfg.map_file) throw std::runtime_error("need --map or --orbit");
  const HenonMap map = io::read_henon_map(fs::path(*cfg.map_file));
  const double R = cfg.radius.value_or(escape_radius(map));

  std::vector<Point2C> sample;
  if (cfg.julia_file) {
    std::ifstream in(*cfg.julia_file);
    if (!in) throw std::runtime_error("cannot open " + *cfg.julia_file);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const ordered_json rec = ordered_json::parse(line);
      if (!rec.contains("point")) continue;
      sample.push_back({Complex{rec["point"][0][0].get<double>(),
                                rec["point"][0][1].get<double>()},
                        Complex{rec["point"][1][0].get<double>(),
                                rec["point"][1][1].get<double>()}});
    }
  } else {
    sample = sample_julia(map, R, cfg.grid_n.value_or(200), cfg.iters.value_or(60));
  }

  for (size_t i = 0; i < sample.size(); ++i) {
    try {
      OrbitSegment orbit = orbit_segment(map, sample[i], n_back, n_fwd, 2.0 * R,
                                         "sample-" + std::to_string(i));
      set.orbits.push_back(std::move(orbit));
    } catch (const std::runtime_error&) {
      ++set.sampled_skipped;  // escaped inside the window
    }
  }

  const int max_period = cfg.periods.value_or(2);
  for (int p = 1; p <= max_period; ++p) {
    const std::vector<PeriodicPoint> pps = newton_periodic(map, p);
    for (size_t j = 0; j < pps.size(); ++j) {
      if (pps[j].is_sink()) {
        ++set.sink_warnings;
        continue;
      }
      OrbitSegment orbit = orbit_from_periodic(map, pps[j], n_back, n_fwd);
      set.orbits.emplace_back(
          "periodic-p" + std::to_string(p) + "-" + std::to_string(j),
          orbit.n_min(),
          [&] {
            std::vector<BasePoint> pts;
            for (int n = orbit.n_min(); n <= orbit.n_max(); ++n)
              pts.push_back(orbit.point(n));
            return pts;
          }(),
          [&] {
            std::vector<Mat2C> mats;
            for (int n = orbit.n_min(); n < orbit.n_max(); ++n)
              mats.push_back(orbit.matrix(n));
            return mats;
          }());
    }
  }
  return set;
}

}  // namespace

int cmd_sample_julia(const RunConfig& cfg) {
  if (!cfg.map_file) {
    std::cerr << "sample-julia: --map is required\n";
    return kExitUsage;
  }
  const HenonMap map = io::read_henon_map(fs::path(*cfg.map_file));
  const double R = cfg.radius.value_or(escape_radius(map));
  const int grid_n = cfg.grid_n.value_or(200);
  const int iters = cfg.iters.value_or(60);
  const std::vector<Point2C> points = sample_julia(map, R, grid_n, iters);
  if (points.empty()) {
    std::cerr << "warning: empty sample; parameters may have no bounded set "
                 "at this resolution\n";
  }

  ordered_json header;
  header["v"] = 1;
  header["kind"] = "julia-sample";
  header["config_hash"] = cfg.config_hash();
  header["map"] = ordered_json::parse(io::henon_map_json(map));
  header["R"] = R;
  header["grid_n"] = grid_n;
  header["iters"] = iters;
  header["count"] = points.size();

  std::ostringstream out;
  out << header.dump() << '\n';
  for (const Point2C& z : points) {
    ordered_json rec;
    rec["point"] = ordered_json::array(
        {ordered_json::array({z[0].real(), z[0].imag()}),
         ordered_json::array({z[1].real(), z[1].imag()})});
    out << rec.dump() << '\n';
  }
  write_text(ensure_out_dir(cfg) / "julia_sample.jsonl", out.str());
  std::cout << "sample-julia: " << points.size() << " points\n";
  return kExitOk;
}

int cmd_detect_critical(const RunConfig& cfg) {
  const int K = cfg.k_or(30);
  if (K < 1) {
    std::cerr << "detect-critical: K must be >= 1\n";
    return kExitUsage;
  }
  const OrbitSet set = gather_orbits(cfg, K, K);
  if (set.sink_warnings > 0) {
    std::cerr << "hypothesis warning: " << set.sink_warnings
              << " periodic sink(s) among Newton points; the no-attractor "
                 "hypothesis may fail\n";
  }
  if (set.orbits.empty()) {
    std::cerr << "detect-critical: empty input (no usable orbits)\n";
    return kExitUsage;
  }
  for (const OrbitSegment& orbit : set.orbits) {
    if (!orbit.contains_window(-K, K)) {
      std::cerr << "detect-critical: horizon K=" << K
                << " exceeds orbit data for " << orbit.id() << "\n";
      return kExitUsage;
    }
  }
  const std::vector<Beta> betas =
      parse_beta_grid(cfg.beta_grid.value_or(kDefaultBetaGrid));
  const double slack = cfg.slack.value_or(-1.0);

  struct Cell {
    std::optional<CriticalReport> report;
    io::CriticalSummaryRow row;
  };
  const int n_orbits = static_cast<int>(set.orbits.size());
  const int n_cells = n_orbits * static_cast<int>(betas.size());
  std::vector<Cell> cells(static_cast<size_t>(n_cells));

  parallel_for(n_cells, cfg.threads_resolved(), [&](int cell) {
    const OrbitSegment& orbit = set.orbits[static_cast<size_t>(cell) / betas.size()];
    const Beta& beta = betas[static_cast<size_t>(cell) % betas.size()];
    Cell& slot = cells[static_cast<size_t>(cell)];
    slot.report = detect_critical(orbit, 0, beta, K, slack);
    slot.row.orbit_id = orbit.id();
    slot.row.index = 0;
    slot.row.beta = beta;
    slot.row.pass = slot.report.has_value();
    if (slot.report) {
      slot.row.margin_back = slot.report->min_margin_back;
      slot.row.margin_fwd = slot.report->min_margin_fwd;
    } else {
      // Indicative margins of the primary (past-expanded) candidate.
      const Direction primary(svd2(compose(orbit, 0, -K).matrix).v_min);
      const TimesMargins m =
          is_critical_at_times(orbit, 0, beta, 0, 0, K, primary, slack);
      slot.row.margin_back = m.min_margin_back;
      slot.row.margin_fwd = m.min_margin_fwd;
    }
  });

  std::vector<CriticalReport> reports;
  std::vector<io::CriticalSummaryRow> rows;
  for (const Cell& cell : cells) {
    rows.push_back(cell.row);
    if (cell.report) reports.push_back(*cell.report);
  }

  const fs::path dir = ensure_out_dir(cfg);
  write_text(dir / "critical_reports.json",
             io::critical_reports_json(reports, cfg.config_hash()));
  write_text(dir / "critical_summary.csv",
             "# v=1 config=" + cfg.config_hash() + "\n" +
                 io::critical_summary_csv(rows));
  std::cout << "detect-critical: " << reports.size() << " critical / "
            << rows.size() << " cells";
  if (set.sampled_skipped > 0) {
    std::cout << " (" << set.sampled_skipped << " sampled points escaped)";
  }
  std::cout << "\n";
  return reports.empty() ? kExitOk : kExitDetection;
}

int cmd_check_domination(const RunConfig& cfg) {
  const int N = cfg.n_or(30);
  if (N < 1) {
    std::cerr << "check-domination: N must be >= 1\n";
    return kExitUsage;
  }
  const OrbitSet set = gather_orbits(cfg, 0, N);
  if (set.orbits.empty()) {
    std::cerr << "check-domination: empty input (no usable orbits)\n";
    return kExitUsage;
  }
  for (const OrbitSegment& orbit : set.orbits) {
    if (orbit.n_max() - orbit.n_min() < N) {
      std::cerr << "check-domination: horizon N=" << N
                << " exceeds orbit data for " << orbit.id() << "\n";
      return kExitUsage;
    }
  }
  const double lambda = cfg.lambda.value_or(1.5);
  const double C = cfg.C.value_or(1.0);
  const DominationCertificate cert = domination_certificate(
      set.orbits, N, lambda, C, cfg.slack.value_or(-1.0));
  write_text(ensure_out_dir(cfg) / "domination_certificate.json",
             io::certificate_json(cert, cfg.config_hash()));
  std::cout << "check-domination: " << (cert.pass ? "pass" : "fail") << " over "
            << cert.per_point.size() << " start points\n";
  return cert.pass ? kExitOk : kExitDetection;
}

int cmd_pliss(const RunConfig& cfg) {
  if (!cfg.seq_file) {
    std::cerr << "pliss-times: --seq is required\n";
    return kExitUsage;
  }
  const RealSeq seq = io::read_real_seq(fs::path(*cfg.seq_file));
  const double gamma1 = cfg.gamma1.value_or(1.0);
  const std::vector<int> ht = hyperbolic_times(seq.values, gamma1);

  std::ostringstream out;
  out << "# v=1 config=" << cfg.config_hash() << "\n";
  out << "k\n";
  for (int k : ht) out << k << '\n';
  write_text(ensure_out_dir(cfg) / "pliss_times.csv", out.str());
  std::cout << "pliss-times: " << ht.size() << " hyperbolic times of "
            << seq.values.size() << " entries\n";
  return kExitOk;
}

int cmd_report(const RunConfig& cfg) {
  const fs::path dir = cfg.out_or(".");
  if (!fs::exists(dir)) {
    std::cerr << "report: no such directory " << dir << "\n";
    return kExitUsage;
  }
  std::ostringstream out;
  out << "file,kind,summary\n";
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const fs::path& file : files) {
    std::ifstream in(file);
    ordered_json j;
    try {
      j = ordered_json::parse(in);
    } catch (const std::exception&) {
      continue;
    }
    const std::string kind = j.value("kind", "unknown");
    std::string summary;
    if (kind == "domination-certificate") {
      summary = j.value("pass", false) ? "pass" : "fail";
    } else if (kind == "critical-reports") {
      summary = std::to_string(j.value("count", size_t{0})) + " critical";
    } else {
      continue;
    }
    out << file.filename().string() << ',' << kind << ',' << summary << '\n';
    std::cout << file.filename().string() << ": " << kind << " -> " << summary
              << '\n';
  }
  write_text(dir / "report.csv", out.str());
  return kExitOk;
}

}  // namespace critic::cli
