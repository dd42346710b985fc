#include <doctest.h>

#include <array>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <set>

#include "fixtures.hpp"
#include "rotcav/ensemble.hpp"

using namespace rotcav;
using namespace rotcav::testing;

TEST_SUITE("ensemble") {

TEST_CASE("launch state follows the distribution bounds") {
  const Model model = fig2_rod_model();
  LaunchDistribution launch;
  launch.forward_velocity = 0.4;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const SystemState s = sample_initial(model, launch, trajectory_seed(3, 0, seed));
    CHECK(s.r.x() == doctest::Approx(-3.0 * model.waist()));
    CHECK(s.r.y() == 0.0);
    CHECK(s.r.z() >= 0.0);
    CHECK(s.r.z() < model.cavity().wavelength);
    const Vec3 v = s.p / model.mass();
    CHECK(v.x() == doctest::Approx(0.4));
    CHECK(std::abs(v.z()) <= 0.05 * 0.4 + 1e-15);
    CHECK(std::abs(s.rotor.m.norm() - 1.0) < 1e-14);
    CHECK(std::abs(s.rotor.m.dot(s.rotor.L)) < 1e-12 * s.rotor.L.norm());
    CHECK(relative_error(s.rotor.L.norm() / model.inertia(), two_pi * 1e6) < 1e-12);
    CHECK(std::abs(s.b - empty_cavity_amplitude(model)) == 0.0);
  }
}

TEST_CASE("zero spread gives purely forward launches") {
  const Model model = fig2_rod_model();
  LaunchDistribution launch;
  launch.transverse_spread = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed)
    CHECK(sample_initial(model, launch, seed).p.z() == 0.0);
}

TEST_CASE("sphere launches carry no angular momentum") {
  const Model model = fig2_sphere_model();
  const SystemState s = sample_initial(model, LaunchDistribution{}, 11);
  CHECK(s.rotor.L.norm() == 0.0);
}

TEST_CASE("orientations are uniform on the sphere") {
  // 48 equal-area cells: 6 bands in cos(theta) times 8 sectors in phi
  const Model model = fig2_rod_model();
  std::array<int, 48> counts{};
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    const Vec3 m = sample_initial(model, LaunchDistribution{}, trajectory_seed(7, 2, i)).rotor.m;
    const int band = std::min(5, static_cast<int>((m.z() + 1.0) * 3.0));
    double phi = std::atan2(m.y(), m.x());
    if (phi < 0.0) phi += two_pi;
    const int sector = std::min(7, static_cast<int>(phi / two_pi * 8.0));
    ++counts[band * 8 + sector];
  }
  const double expected = n / 48.0;
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  // 99th percentile of chi-square with 47 degrees of freedom
  CHECK(chi2 < 72.44330737654823);
}

TEST_CASE("sampling depends only on the seed") {
  const Model model = fig2_rod_model();
  const LaunchDistribution launch;
  const SystemState a = sample_initial(model, launch, 12345);
  const SystemState b = sample_initial(model, launch, 12345);
  const SystemState c = sample_initial(model, launch, 12346);
  CHECK((a.r - b.r).norm() == 0.0);
  CHECK((a.rotor.m - b.rotor.m).norm() == 0.0);
  CHECK((a.rotor.L - b.rotor.L).norm() == 0.0);
  CHECK((a.rotor.m - c.rotor.m).norm() > 0.0);
}

TEST_CASE("trajectory seeds are distinct across points and indices") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t p = 0; p < 9; ++p)
    for (std::uint64_t j = 0; j < 2000; ++j) seen.insert(trajectory_seed(1, p, j));
  CHECK(seen.size() == 9u * 2000u);
  CHECK(trajectory_seed(1, 0, 0) != trajectory_seed(2, 0, 0));
}

TEST_CASE("invalid launches are rejected") {
  const Model model = fig2_rod_model();
  LaunchDistribution launch;
  launch.forward_velocity = 0.0;
  CHECK_THROWS_AS(sample_initial(model, launch, 1), std::invalid_argument);
  launch = {};
  launch.transverse_spread = -0.1;
  CHECK_THROWS_AS(sample_initial(model, launch, 1), std::invalid_argument);
}

TEST_CASE("Wilson interval") {
  struct Row {
    long k, n;
    double low, high;
  };
  // statsmodels proportion_confint(method="wilson")
  const Row rows[] = {{30, 100, 0.21894885294932756, 0.39584854633346667},
                      {0, 500, 0.0, 0.007624340461552245},
                      {500, 500, 0.9923756595384479, 1.0},
                      {7, 20, 0.18119182410108203, 0.5671457233147638}};
  for (const Row& r : rows) {
    const Interval w = wilson_interval(r.k, r.n);
    CHECK(std::abs(w.low - r.low) < 1e-14);
    CHECK(std::abs(w.high - r.high) < 1e-14);
  }

  SUBCASE("width shrinks as one over root n") {
    const double w100 = wilson_interval(30, 100).high - wilson_interval(30, 100).low;
    const double w400 = wilson_interval(120, 400).high - wilson_interval(120, 400).low;
    const double w1600 = wilson_interval(480, 1600).high - wilson_interval(480, 1600).low;
    CHECK(w100 / w400 == doctest::Approx(2.0).epsilon(0.02));
    CHECK(w400 / w1600 == doctest::Approx(2.0).epsilon(0.01));
  }
  SUBCASE("contains the point estimate") {
    for (long n : {1L, 5L, 37L, 1000L})
      for (long k = 0; k <= n; k += std::max(1L, n / 7)) {
        const Interval w = wilson_interval(k, n);
        const double p = static_cast<double>(k) / n;
        CHECK(w.low <= p + 1e-15);
        CHECK(w.high >= p - 1e-15);
        CHECK(w.low >= 0.0);
        CHECK(w.high <= 1.0);
      }
  }
}

TEST_CASE("capture curve bookkeeping and thread independence") {
  const Model model = fig2_sphere_model();
  EnsembleConfig cfg;
  cfg.velocities = {0.5, 1.0};
  cfg.trajectories = 24;
  cfg.master_seed = 9;

  cfg.threads = 1;
  const auto one = capture_curve(model, cfg);
  for (int threads : {4, 16}) {
    cfg.threads = threads;
    const auto many = capture_curve(model, cfg);
    REQUIRE(many.size() == one.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
      CHECK(many[i].seeds == one[i].seeds);
      CHECK(many[i].outcomes == one[i].outcomes);
      CHECK(many[i].captured == one[i].captured);
    }
  }
  for (const auto& pt : one) {
    CHECK(pt.total == 24);
    CHECK(pt.captured + pt.transmitted + pt.undecided == pt.total);
    CHECK(pt.failed <= pt.undecided);
    CHECK(pt.probability >= 0.0);
    CHECK(pt.probability <= 1.0);
    CHECK(pt.interval.low <= pt.probability);
    CHECK(pt.interval.high >= pt.probability);
  }
}

TEST_CASE("progress reports every trajectory") {
  const Model model = fig2_sphere_model();
  EnsembleConfig cfg;
  cfg.velocities = {2.0};
  cfg.trajectories = 6;
  cfg.threads = 2;
  std::atomic<long> calls{0}, last_total{0};
  capture_curve(model, cfg, [&](long, long total) {
    ++calls;
    last_total = total;
  });
  CHECK(calls == 6);
  CHECK(last_total == 6);
}

TEST_CASE("fast rods are not captured") {
  const Model model = fig2_rod_model();
  EnsembleConfig cfg;
  cfg.velocities = {10.0};
  cfg.trajectories = 100;
  cfg.threads = 1;
  const auto pts = capture_curve(model, cfg);
  CHECK(pts[0].probability < 0.01);
  CHECK(pts[0].undecided == 0);
}

TEST_CASE("truncated runs are flagged undecided") {
  const Model model = fig2_sphere_model();
  EnsembleConfig cfg;
  cfg.velocities = {0.5};
  cfg.trajectories = 5;
  cfg.threads = 1;
  cfg.capture.max_transits = 0.05;
  const auto pts = capture_curve(model, cfg);
  CHECK(pts[0].undecided == 5);
  CHECK(pts[0].undecided_flag);
}

TEST_CASE("capture curve input checks") {
  const Model model = fig2_sphere_model();
  EnsembleConfig cfg;
  CHECK_THROWS_AS(capture_curve(model, cfg), std::invalid_argument);
  cfg.velocities = {1.0};
  cfg.trajectories = 0;
  CHECK_THROWS_AS(capture_curve(model, cfg), std::invalid_argument);
}

TEST_CASE("worker count resolution") {
  CHECK(resolve_threads(3) == 3);
  setenv("ROTCAV_THREADS", "5", 1);
  CHECK(resolve_threads(0) == 5);
  CHECK(resolve_threads(2) == 2);
  setenv("ROTCAV_THREADS", "junk", 1);
  CHECK(resolve_threads(0) >= 1);
  unsetenv("ROTCAV_THREADS");
  CHECK(resolve_threads(0) >= 1);
}

}
