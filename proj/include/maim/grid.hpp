#pragma once

#include <vector>

#include "maim/channel.hpp"

namespace maim {

// Uniform lattice over [-G, G]^2. Row-major ordering: point q = row * nx + col
// sits at (-G + col * spacing_x, -G + row * spacing_y), so x varies fastest
// and the first point is (-G, -G).
struct SamplingGrid {
  std::vector<Position> points;
  double spacing_x = 0.0;
  double spacing_y = 0.0;
  double half_extent_G = 0.0;
  int nx = 0;
  int ny = 0;

  int Q() const { return static_cast<int>(points.size()); }
};

// Largest lattice spacing whose zeroth-order Bessel correlation stays at or
// above rho_tar: (lambda / pi) sqrt(1 - rho_tar). Strictly decreasing in
// rho_tar.
double max_spacing(double wavelength, double rho_tar);

// n = floor(2G / max_spacing) + 1 points per axis at the maximum allowable
// spacing. Throws if fewer than 2 points fit per axis.
SamplingGrid build_grid(double G, double wavelength, double rho_tar);

// N = N1 * N2 rectangular tiles over [-G, G]^2; N1 columns along x, N2 rows
// along y, cell index row-major. Every sampling point belongs to exactly one
// cell and every cell is nonempty.
struct CellPartition {
  int N = 0;
  int N1 = 0;
  int N2 = 0;
  std::vector<int> cell_of;               // size Q
  std::vector<std::vector<int>> members;  // size N, each ascending
};

// N must be a power of two and N < Q. N1 >= N2 is the most-square
// factorization (16 -> 4x4, 128 -> 16x8). Points exactly on an interior tile
// edge go to the lower-index tile.
CellPartition partition_cells(const SamplingGrid& grid, int N);

// Centroid of the cell's rectangular tile.
Position cell_center(const CellPartition& partition, const SamplingGrid& grid, int c);

// Channel vectors for every grid point under one propagation environment.
ChannelSet build_channel_set(const PathProfile& profile, const SamplingGrid& grid);

}  // namespace maim
