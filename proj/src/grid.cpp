#include "maim/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "maim/errors.hpp"

namespace maim {

namespace {

bool power_of_two(int n) { return n >= 1 && (n & (n - 1)) == 0; }

// Tile index along one axis with the lower-tile rule on interior edges:
// u in [0, tiles * width], boundary multiples of width belong to the tile
// below them.
int tile_index(double u, double width, int tiles) {
  int t = static_cast<int>(std::ceil(u / width)) - 1;
  return std::clamp(t, 0, tiles - 1);
}

}  // namespace

double max_spacing(double wavelength, double rho_tar) {
  if (!(wavelength > 0.0)) throw std::invalid_argument("wavelength must be positive");
  if (!(rho_tar >= 0.0 && rho_tar < 1.0))
    throw std::invalid_argument("rho_tar must lie in [0, 1)");
  return wavelength / std::numbers::pi * std::sqrt(1.0 - rho_tar);
}

SamplingGrid build_grid(double G, double wavelength, double rho_tar) {
  if (!(G > 0.0)) throw std::invalid_argument("half extent G must be positive");
  const double dr = max_spacing(wavelength, rho_tar);
  const int n = static_cast<int>(std::floor(2.0 * G / dr)) + 1;
  if (n < 2)
    throw std::invalid_argument("spacing " + std::to_string(dr) +
                                " m exceeds the region; fewer than 2 points per axis");
  SamplingGrid grid;
  grid.spacing_x = dr;
  grid.spacing_y = dr;
  grid.half_extent_G = G;
  grid.nx = n;
  grid.ny = n;
  grid.points.resize(static_cast<std::size_t>(n) * n);
  for (int row = 0; row < n; ++row)
    for (int col = 0; col < n; ++col)
      grid.points[static_cast<std::size_t>(row) * n + col] =
          Position{-G + col * dr, -G + row * dr};
  return grid;
}

CellPartition partition_cells(const SamplingGrid& grid, int N) {
  if (!power_of_two(N)) throw std::invalid_argument("cell count N must be a power of two");
  if (N >= grid.Q())
    throw std::invalid_argument("cell count N = " + std::to_string(N) +
                                " must be smaller than Q = " + std::to_string(grid.Q()));
  int n1 = 1, n2 = 1;
  // Most-square split with N1 >= N2: alternate factors of 2 starting with N1.
  for (int rest = N; rest > 1; rest >>= 1) {
    if (n1 <= n2)
      n1 <<= 1;
    else
      n2 <<= 1;
  }
  CellPartition part;
  part.N = N;
  part.N1 = n1;
  part.N2 = n2;
  const double G = grid.half_extent_G;
  const double wx = 2.0 * G / n1;
  const double wy = 2.0 * G / n2;
  part.cell_of.resize(static_cast<std::size_t>(grid.Q()));
  part.members.assign(static_cast<std::size_t>(N), {});
  for (int q = 0; q < grid.Q(); ++q) {
    const Position t = grid.points[static_cast<std::size_t>(q)];
    const int col = tile_index(t.x + G, wx, n1);
    const int row = tile_index(t.y + G, wy, n2);
    const int c = row * n1 + col;
    part.cell_of[static_cast<std::size_t>(q)] = c;
    part.members[static_cast<std::size_t>(c)].push_back(q);
  }
  for (int c = 0; c < N; ++c)
    if (part.members[static_cast<std::size_t>(c)].empty())
      throw InternalError("cell " + std::to_string(c) + " has no sampling points");
  return part;
}

Position cell_center(const CellPartition& partition, const SamplingGrid& grid, int c) {
  if (c < 0 || c >= partition.N)
    throw std::out_of_range("cell index " + std::to_string(c) + " outside [0, " +
                            std::to_string(partition.N) + ")");
  const double G = grid.half_extent_G;
  const double wx = 2.0 * G / partition.N1;
  const double wy = 2.0 * G / partition.N2;
  const int row = c / partition.N1;
  const int col = c % partition.N1;
  return Position{-G + (col + 0.5) * wx, -G + (row + 0.5) * wy};
}

ChannelSet build_channel_set(const PathProfile& profile, const SamplingGrid& grid) {
  ChannelSet set;
  set.L = profile.L();
  set.data.resize(static_cast<std::size_t>(grid.Q()) * set.L);
  for (int q = 0; q < grid.Q(); ++q) {
    const ChannelVector h = channel_at(profile, grid.points[static_cast<std::size_t>(q)]);
    std::copy(h.begin(), h.end(), set.data.begin() + static_cast<std::size_t>(q) * set.L);
  }
  return set;
}

}  // namespace maim
