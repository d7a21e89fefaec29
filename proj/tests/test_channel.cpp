#include <cmath>

#include "doctest.h"
#include "maim/channel.hpp"

using namespace maim;

namespace {

PathProfile fixed_profile() {
  PathProfile p;
  p.wavelength = 0.3;
  p.paths = {{M_PI / 2, 0.0, {1.0, 0.0}}, {M_PI / 3, M_PI / 4, {0.5, -0.25}}};
  return p;
}

}  // namespace

TEST_CASE("path delay is zero at the origin") {
  const PathProfile p = fixed_profile();
  for (int l = 0; l < p.L(); ++l) CHECK(path_delay(p, l, {0.0, 0.0}) == 0.0);
}

TEST_CASE("path delay projects onto the path direction") {
  PathProfile p;
  p.wavelength = 0.3;
  p.paths = {{M_PI / 2, 0.0, {1.0, 0.0}}};
  // theta=pi/2, phi=0 points along x, so a quarter-wave x offset is returned.
  CHECK(path_delay(p, 0, {0.3 / 4, 0.0}) == doctest::Approx(0.075).epsilon(1e-14));
}

TEST_CASE("path delay matches a hand-evaluated case") {
  const PathProfile p = fixed_profile();
  const double expect = 0.1 * std::sin(M_PI / 3) * std::cos(M_PI / 4) + 0.2 * std::cos(M_PI / 3);
  CHECK(expect == doctest::Approx(0.16123724356957946).epsilon(1e-14));
  CHECK(path_delay(p, 1, {0.1, 0.2}) == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("path delay rejects out-of-range path indices") {
  const PathProfile p = fixed_profile();
  CHECK_THROWS_AS(path_delay(p, -1, {0.0, 0.0}), std::out_of_range);
  CHECK_THROWS_AS(path_delay(p, 2, {0.0, 0.0}), std::out_of_range);
}

TEST_CASE("field response is all ones at the origin") {
  const PathProfile p = fixed_profile();
  const ChannelVector f = field_response(p, {0.0, 0.0});
  REQUIRE(f.size() == 2);
  for (const cplx& v : f) {
    CHECK(v.real() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(v.imag() == doctest::Approx(0.0).epsilon(1e-15));
  }
}

TEST_CASE("quarter-wave offset along the path direction gives phase pi/2") {
  PathProfile p;
  p.wavelength = 0.3;
  p.paths = {{M_PI / 2, 0.0, {1.0, 0.0}}};
  const ChannelVector f = field_response(p, {p.wavelength / 4, 0.0});
  REQUIRE(f.size() == 1);
  CHECK(f[0].real() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(f[0].imag() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("field response entries are unit modulus") {
  Rng rng = make_stream(11, kStreamProfile, 0, 0);
  const PathProfile p = sample_profile(rng, 8, 0.3);
  for (const Position t : {Position{0.37, -0.81}, Position{-1.0, 1.0}, Position{0.0, 0.99}}) {
    for (const cplx& v : field_response(p, t)) CHECK(std::abs(v) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("single-path phase difference follows the delay difference") {
  PathProfile p;
  p.wavelength = 0.3;
  p.paths = {{1.1, 2.3, {1.0, 0.0}}};
  const Position t1{0.2, -0.4}, t2{-0.3, 0.1};
  const cplx prod = field_response(p, t1)[0] * std::conj(field_response(p, t2)[0]);
  const double expect = 2.0 * M_PI / p.wavelength * (path_delay(p, 0, t1) - path_delay(p, 0, t2));
  const double wrapped = std::arg(std::polar(1.0, expect));
  CHECK(std::arg(prod) == doctest::Approx(wrapped).epsilon(1e-10));
}

TEST_CASE("channel vectors are gain-weighted field responses") {
  Rng rng = make_stream(12, kStreamProfile, 0, 0);
  const PathProfile p = sample_profile(rng, 6, 0.3);
  const Position t{0.11, 0.22};
  const ChannelVector h = channel_at(p, t);
  const ChannelVector f = field_response(p, t);
  REQUIRE(h.size() == f.size());
  for (std::size_t l = 0; l < h.size(); ++l) {
    const cplx expect = p.paths[l].gain * f[l];
    CHECK(std::abs(h[l] - expect) < 1e-14);
  }
}

TEST_CASE("channel at the origin returns the gain list and norm is position free") {
  Rng rng = make_stream(13, kStreamProfile, 0, 0);
  PathProfile p = sample_profile(rng, 5, 0.3);
  const ChannelVector h0 = channel_at(p, {0.0, 0.0});
  for (std::size_t l = 0; l < h0.size(); ++l) CHECK(std::abs(h0[l] - p.paths[l].gain) < 1e-15);

  double power = 0.0;
  for (const Path& path : p.paths) power += std::norm(path.gain);
  for (const Position t : {Position{0.5, 0.5}, Position{-0.9, 0.3}}) {
    double n = 0.0;
    for (const cplx& v : channel_at(p, t)) n += std::norm(v);
    CHECK(n == doctest::Approx(power).epsilon(1e-12));
  }

  set_unit_gains(p);
  const ChannelVector ones = channel_at(p, {0.0, 0.0});
  double n = 0.0;
  for (const cplx& v : ones) {
    CHECK(std::abs(v - cplx{1.0, 0.0}) < 1e-15);
    n += std::norm(v);
  }
  CHECK(n == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("profile sampling is deterministic per stream") {
  Rng a = make_stream(99, kStreamProfile, 3, 0);
  Rng b = make_stream(99, kStreamProfile, 3, 0);
  const PathProfile pa = sample_profile(a, 6, 0.3);
  const PathProfile pb = sample_profile(b, 6, 0.3);
  REQUIRE(pa.L() == pb.L());
  for (int l = 0; l < pa.L(); ++l) {
    CHECK(pa.paths[l].theta == pb.paths[l].theta);
    CHECK(pa.paths[l].phi == pb.paths[l].phi);
    CHECK(pa.paths[l].gain == pb.paths[l].gain);
  }
  Rng c = make_stream(99, kStreamProfile, 4, 0);
  const PathProfile pc = sample_profile(c, 6, 0.3);
  CHECK(pc.paths[0].theta != pa.paths[0].theta);
}

TEST_CASE("sampled angles live in [0, 2pi) and gains average to unit power") {
  Rng rng = make_stream(7, kStreamProfile, 0, 0);
  double total = 0.0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    const PathProfile p = sample_profile(rng, 6, 0.3);
    double power = 0.0;
    for (const Path& path : p.paths) {
      CHECK(path.theta >= 0.0);
      CHECK(path.theta < 2.0 * M_PI);
      CHECK(path.phi >= 0.0);
      CHECK(path.phi < 2.0 * M_PI);
      power += std::norm(path.gain);
    }
    total += power;
  }
  CHECK(total / draws == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("single-path gains have unit variance") {
  Rng rng = make_stream(8, kStreamProfile, 0, 0);
  double total = 0.0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) total += std::norm(sample_profile(rng, 1, 0.3).paths[0].gain);
  CHECK(total / draws == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("profile sampling rejects non-positive path counts") {
  Rng rng = make_stream(1, kStreamProfile, 0, 0);
  CHECK_THROWS_AS(sample_profile(rng, 0, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(sample_profile(rng, 3, 0.0), std::invalid_argument);
}

TEST_CASE("stream derivation separates tags and keys") {
  CHECK(mix_seed(1, kStreamProfile, 0, 0) != mix_seed(1, kStreamSymbols, 0, 0));
  CHECK(mix_seed(1, kStreamProfile, 0, 0) != mix_seed(1, kStreamProfile, 1, 0));
  CHECK(mix_seed(1, kStreamProfile, 0, 0) != mix_seed(2, kStreamProfile, 0, 0));
  CHECK(mix_seed(5, kStreamSymbols, 2, 3) == mix_seed(5, kStreamSymbols, 2, 3));
}
