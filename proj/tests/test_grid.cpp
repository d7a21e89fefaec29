#include <cmath>
#include <set>

#include "doctest.h"
#include "maim/errors.hpp"
#include "maim/grid.hpp"
#include "oracles.hpp"

using namespace maim;

namespace {

// 5x5 lattice on [-1,1]^2 with exact 0.5 spacing: lambda = pi/2 and
// rho_tar = 0 give max_spacing exactly 0.5.
SamplingGrid five_by_five() { return build_grid(1.0, 0.5 * M_PI, 0.0); }

}  // namespace

TEST_CASE("maximum spacing matches the closed form") {
  CHECK(max_spacing(0.3, 0.9) == doctest::Approx(0.030197527263).epsilon(1e-9));
  CHECK(max_spacing(0.3, 0.8) == doctest::Approx(0.042705752605).epsilon(1e-9));
  CHECK(max_spacing(0.3, 0.7) == doctest::Approx(0.052303651482).epsilon(1e-9));
  CHECK(max_spacing(0.3, 0.0) == doctest::Approx(0.3 / M_PI).epsilon(1e-12));
}

TEST_CASE("maximum spacing decreases strictly in the similarity target") {
  double prev = max_spacing(0.3, 0.0);
  for (double rho = 0.05; rho < 1.0; rho += 0.05) {
    const double cur = max_spacing(0.3, rho);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("maximum spacing rejects bad arguments") {
  CHECK_THROWS_AS(max_spacing(0.3, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(max_spacing(0.3, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(max_spacing(0.3, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(max_spacing(0.0, 0.5), std::invalid_argument);
}

TEST_CASE("Bessel correlation at the chosen spacing sits near the target") {
  // The spacing rule is first order, so J0 overshoots the target slightly;
  // the overshoot grows as the target drops.
  const double j07 = oracles::j0_series(2.0 * M_PI * max_spacing(0.3, 0.7) / 0.3);
  const double j08 = oracles::j0_series(2.0 * M_PI * max_spacing(0.3, 0.8) / 0.3);
  const double j09 = oracles::j0_series(2.0 * M_PI * max_spacing(0.3, 0.9) / 0.3);
  CHECK(j07 == doctest::Approx(0.721763895).epsilon(1e-6));
  CHECK(j08 == doctest::Approx(0.809780533).epsilon(1e-6));
  CHECK(j09 == doctest::Approx(0.902472395).epsilon(1e-6));
}

TEST_CASE("grid sizes for the reference region") {
  const SamplingGrid g9 = build_grid(1.0, 0.3, 0.9);
  CHECK(g9.nx == 67);
  CHECK(g9.ny == 67);
  CHECK(g9.Q() == 4489);
  CHECK(build_grid(1.0, 0.3, 0.8).nx == 47);
  CHECK(build_grid(1.0, 0.3, 0.7).nx == 39);
}

TEST_CASE("grid geometry follows the construction rule") {
  const SamplingGrid g = build_grid(1.0, 0.3, 0.9);
  CHECK(g.points.front().x == -1.0);
  CHECK(g.points.front().y == -1.0);
  for (const Position& p : g.points) {
    CHECK(p.x >= -1.0);
    CHECK(p.x <= 1.0);
    CHECK(p.y >= -1.0);
    CHECK(p.y <= 1.0);
  }
  // Row-major with x fastest.
  CHECK(g.points[1].x == doctest::Approx(-1.0 + g.spacing_x).epsilon(1e-15));
  CHECK(g.points[1].y == -1.0);
  CHECK(g.points[static_cast<std::size_t>(g.nx)].x == -1.0);
  CHECK(g.points[static_cast<std::size_t>(g.nx)].y ==
        doctest::Approx(-1.0 + g.spacing_y).epsilon(1e-15));
  CHECK(g.spacing_x == doctest::Approx(max_spacing(0.3, 0.9)).epsilon(1e-15));
}

TEST_CASE("half extent equal to half the spacing gives a 2x2 grid") {
  const double dr = max_spacing(0.3, 0.9);
  const SamplingGrid g = build_grid(dr / 2.0 * 1.0000001, 0.3, 0.9);
  CHECK(g.nx == 2);
  CHECK(g.Q() == 4);
}

TEST_CASE("regions too small for two points per axis are rejected") {
  CHECK_THROWS_AS(build_grid(0.01, 0.3, 0.9), std::invalid_argument);
  CHECK_THROWS_AS(build_grid(0.0, 0.3, 0.9), std::invalid_argument);
}

TEST_CASE("partition covers every point exactly once") {
  const SamplingGrid g = build_grid(1.0, 0.3, 0.9);
  const CellPartition part = partition_cells(g, 16);
  CHECK(part.N1 == 4);
  CHECK(part.N2 == 4);
  std::set<int> seen;
  std::size_t total = 0;
  for (int c = 0; c < part.N; ++c) {
    CHECK(!part.members[static_cast<std::size_t>(c)].empty());
    total += part.members[static_cast<std::size_t>(c)].size();
    for (int q : part.members[static_cast<std::size_t>(c)]) {
      CHECK(part.cell_of[static_cast<std::size_t>(q)] == c);
      CHECK(seen.insert(q).second);
    }
  }
  CHECK(total == static_cast<std::size_t>(g.Q()));
}

TEST_CASE("partition matches an independent geometric recount") {
  const SamplingGrid g = build_grid(1.0, 0.3, 0.9);
  const CellPartition part = partition_cells(g, 16);
  for (int q = 0; q < g.Q(); q += 7) {
    const Position t = g.points[static_cast<std::size_t>(q)];
    // Tile widths 0.5; interior boundaries assign downward.
    int col = 0;
    while (col < 3 && t.x > -1.0 + 0.5 * (col + 1)) ++col;
    int row = 0;
    while (row < 3 && t.y > -1.0 + 0.5 * (row + 1)) ++row;
    CHECK(part.cell_of[static_cast<std::size_t>(q)] == row * 4 + col);
  }
}

TEST_CASE("interior boundary points belong to the lower tile") {
  const SamplingGrid g = five_by_five();
  REQUIRE(g.nx == 5);
  const CellPartition part = partition_cells(g, 4);
  const auto cell_at = [&](double x, double y) {
    for (int q = 0; q < g.Q(); ++q)
      if (g.points[static_cast<std::size_t>(q)].x == x && g.points[static_cast<std::size_t>(q)].y == y)
        return part.cell_of[static_cast<std::size_t>(q)];
    FAIL("missing point");
    return -1;
  };
  CHECK(cell_at(0.0, 0.0) == 0);   // on both interior edges
  CHECK(cell_at(0.5, 0.0) == 1);   // right of the x edge, on the y edge
  CHECK(cell_at(0.0, 0.5) == 2);
  CHECK(cell_at(0.5, 0.5) == 3);
  CHECK(cell_at(-1.0, -1.0) == 0);
  CHECK(cell_at(1.0, 1.0) == 3);
}

TEST_CASE("cell counts and factorization") {
  const SamplingGrid g = build_grid(1.0, 0.3, 0.9);
  const CellPartition p128 = partition_cells(g, 128);
  CHECK(p128.N1 == 16);
  CHECK(p128.N2 == 8);
  const CellPartition p2 = partition_cells(g, 2);
  CHECK(p2.N1 == 2);
  CHECK(p2.N2 == 1);
  const CellPartition p8 = partition_cells(g, 8);
  CHECK(p8.N1 == 4);
  CHECK(p8.N2 == 2);
}

TEST_CASE("partition rejects invalid cell counts") {
  const SamplingGrid tiny = build_grid(max_spacing(0.3, 0.9) / 2.0 * 1.0000001, 0.3, 0.9);
  REQUIRE(tiny.Q() == 4);
  CHECK_THROWS_AS(partition_cells(tiny, 4), std::invalid_argument);  // N < Q violated
  CHECK_THROWS_AS(partition_cells(tiny, 3), std::invalid_argument);  // not a power of two
  CHECK_THROWS_AS(partition_cells(tiny, 0), std::invalid_argument);
  CHECK(partition_cells(tiny, 2).N == 2);
}

TEST_CASE("cell centers are tile centroids") {
  const SamplingGrid g = five_by_five();
  const CellPartition p1 = partition_cells(g, 1);
  const Position c0 = cell_center(p1, g, 0);
  CHECK(c0.x == doctest::Approx(0.0));
  CHECK(c0.y == doctest::Approx(0.0));

  const CellPartition p4 = partition_cells(g, 4);
  const Position a = cell_center(p4, g, 0);
  CHECK(a.x == doctest::Approx(-0.5));
  CHECK(a.y == doctest::Approx(-0.5));
  const Position d = cell_center(p4, g, 3);
  CHECK(d.x == doctest::Approx(0.5));
  CHECK(d.y == doctest::Approx(0.5));

  const SamplingGrid big = build_grid(1.0, 0.3, 0.9);
  const CellPartition p16 = partition_cells(big, 16);
  const Position first = cell_center(p16, big, 0);
  CHECK(first.x == doctest::Approx(-0.75));
  CHECK(first.y == doctest::Approx(-0.75));

  CHECK_THROWS_AS(cell_center(p16, big, 16), std::out_of_range);
  CHECK_THROWS_AS(cell_center(p16, big, -1), std::out_of_range);
}

TEST_CASE("channel sets align with grid ordering") {
  const SamplingGrid g = five_by_five();
  Rng rng = make_stream(3, kStreamProfile, 0, 0);
  const PathProfile profile = sample_profile(rng, 3, 0.5 * M_PI);
  const ChannelSet set = build_channel_set(profile, g);
  CHECK(set.Q() == g.Q());
  CHECK(set.L == 3);
  for (int q = 0; q < g.Q(); q += 6) {
    const ChannelVector h = channel_at(profile, g.points[static_cast<std::size_t>(q)]);
    for (int l = 0; l < 3; ++l) CHECK(set.at(q)[l] == h[static_cast<std::size_t>(l)]);
  }
}
