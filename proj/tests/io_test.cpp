#include <doctest.h>

#include <fstream>
#include <sstream>

#include "critic/io.hpp"
#include "support/random_fixtures.hpp"

using namespace critic;

TEST_CASE("orbit JSONL round trip") {
  std::mt19937_64 rng(71);
  const OrbitSegment orbit = critic::testing::random_orbit(rng, 3, 4);

  std::stringstream buffer;
  io::write_orbit_jsonl(orbit, buffer);
  const std::vector<OrbitSegment> loaded = io::read_orbits_jsonl(buffer);
  REQUIRE(loaded.size() == 1);
  const OrbitSegment& back = loaded[0];
  CHECK(back.id() == orbit.id());
  CHECK(back.n_min() == orbit.n_min());
  CHECK(back.n_max() == orbit.n_max());
  for (int n = orbit.n_min(); n <= orbit.n_max(); ++n) {
    CHECK(back.point(n)[0] == orbit.point(n)[0]);
    CHECK(back.point(n)[1] == orbit.point(n)[1]);
    if (n < orbit.n_max()) {
      CHECK(back.matrix(n).a == orbit.matrix(n).a);
      CHECK(back.matrix(n).d == orbit.matrix(n).d);
    }
  }

  // log_g survives the round trip bit-for-bit.
  const Direction xi = critic::testing::random_direction(rng);
  CHECK(log_g(back, 0, xi, 3) == log_g(orbit, 0, xi, 3));
}

TEST_CASE("henon map JSON round trip") {
  const HenonMap map({Complex{-6.0, 0.25}, Complex{0.0, 0.0}, Complex{1.0, -0.5}},
                     Complex{0.1, 0.05});
  const std::string text = io::henon_map_json(map);
  const auto path = std::filesystem::temp_directory_path() / "critic_map_test.json";
  {
    std::ofstream out(path);
    out << text;
  }
  const HenonMap back = io::read_henon_map(path);
  CHECK(back.b() == map.b());
  REQUIRE(back.poly().size() == map.poly().size());
  for (size_t i = 0; i < map.poly().size(); ++i) {
    CHECK(back.poly()[i] == map.poly()[i]);
  }
  std::filesystem::remove(path);
}

TEST_CASE("format_double round trips") {
  std::mt19937_64 rng(72);
  std::uniform_real_distribution<double> uni(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double x = uni(rng);
    CHECK(std::stod(io::format_double(x)) == x);
  }
  CHECK(io::format_double(0.1) == "0.1");
}

TEST_CASE("series CSV") {
  const OrbitSegment orbit = critic::testing::constant_orbit(
      Mat2C::diag(Complex{0.8, 0.0}, Complex{0.1, 0.0}), 2, 2);
  const Direction e1(Complex{1.0, 0.0}, Complex{});
  const LogMultiplierSeries series = g_series(orbit, 0, e1, 2, 2);
  const std::string csv = io::series_csv(series);
  CHECK(csv.substr(0, 8) == "n,log_g\n");
  CHECK(csv.find("\n0,0\n") != std::string::npos);
}

TEST_CASE("read_real_seq CSV and JSON") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto csv_path = dir / "critic_seq_test.csv";
  {
    std::ofstream out(csv_path);
    out << "n,value\n-1,2.5\n0,1\n1,0.25\n";
  }
  const RealSeq csv_seq = io::read_real_seq(csv_path);
  CHECK(csv_seq.offset == -1);
  CHECK(csv_seq.at(-1) == 2.5);
  CHECK(csv_seq.at(1) == 0.25);
  std::filesystem::remove(csv_path);

  const auto json_path = dir / "critic_seq_test.json";
  {
    std::ofstream out(json_path);
    out << "{\"offset\": -2, \"values\": [4, 2, 1, 0.5]}";
  }
  const RealSeq json_seq = io::read_real_seq(json_path);
  CHECK(json_seq.offset == -2);
  CHECK(json_seq.at(1) == 0.5);
  std::filesystem::remove(json_path);

  const auto arr_path = dir / "critic_seq_arr_test.json";
  {
    std::ofstream out(arr_path);
    out << "[2, 2, 0.5, 2]";
  }
  const RealSeq arr_seq = io::read_real_seq(arr_path);
  CHECK(arr_seq.offset == 0);
  CHECK(arr_seq.values.size() == 4);
  std::filesystem::remove(arr_path);
}

TEST_CASE("critical pair JSON") {
  const OrbitSegment tangency = make_tangency_orbit(10, 14);
  const auto crit = detect_critical(tangency, 0, Beta(0.9, 0.7), 5);
  REQUIRE(crit.has_value());
  const auto pair = critical_pair_search(tangency, *crit, 6);
  REQUIRE(pair.has_value());
  const std::string text = io::critical_pair_json(*pair, "0000000000000000");
  CHECK(text.find("\"kind\": \"critical-pair\"") != std::string::npos);
  CHECK(text.find("\"finite_horizon\": true") != std::string::npos);
  CHECK(text.find("\"value_index\": 1") != std::string::npos);
}

TEST_CASE("sphere point serialization convention") {
  CHECK(io::sphere_point_json(SpherePoint::infinity()) == "\"inf\"");
  CHECK(io::sphere_point_from_json("\"inf\"").at_infinity);
  const SpherePoint p(Complex{0.5, -2.0});
  const SpherePoint back = io::sphere_point_from_json(io::sphere_point_json(p));
  CHECK(back.z == p.z);
  CHECK_FALSE(back.at_infinity);
  CHECK_THROWS_AS(io::sphere_point_from_json("{\"z\": 1}"), std::runtime_error);
}

TEST_CASE("certificate JSON carries schema version and config hash") {
  DominationCertificate cert;
  cert.lambda = 1.5;
  cert.C = 1.0;
  cert.horizon = 10;
  cert.pass = true;
  const std::string text = io::certificate_json(cert, "deadbeef00000000");
  CHECK(text.find("\"v\": 1") != std::string::npos);
  CHECK(text.find("deadbeef00000000") != std::string::npos);
  CHECK(io::fnv1a_hex("x") != io::fnv1a_hex("y"));
}
