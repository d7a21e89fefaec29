#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "maim/anchors.hpp"
#include "maim/grid.hpp"
#include "maim/sim.hpp"

namespace maim {

// Columns: q,x,y,cell. One row per sampling point, ascending q.
void write_grid_csv(const std::string& path, const SamplingGrid& grid,
                    const CellPartition& partition);

// Columns: rank,q,x,y,cell. One row per anchor in index-state order.
void write_anchor_csv(const std::string& path, const AnchorSet& anchors,
                      const SamplingGrid& grid, const CellPartition& partition);

// One measured or analytical point of a BER experiment. ber_bound is NaN when
// the row carries no bound; such rows serialize with an empty bound field.
struct BerCsvRow {
  std::string scheme;    // "1".."6" or "baseline"
  std::string detector;  // ml_full | ml_anchor | two_stage
  int L = 0;
  int N = 0;
  int M = 0;
  double rho_tar = 0.0;
  double snr_db = 0.0;
  long long bits_sent = 0;
  long long bit_errors = 0;
  double ber = 0.0;
  double ber_bound = std::numeric_limits<double>::quiet_NaN();
  std::uint64_t seed = 0;

  bool has_bound() const { return ber_bound == ber_bound; }
};

void write_ber_csv(const std::string& path, const std::vector<BerCsvRow>& rows);
std::vector<BerCsvRow> read_ber_csv(const std::string& path);

// Scatter of sampling points with cell boundaries; anchors, when given, drawn
// as filled markers.
void write_grid_svg(const std::string& path, const SamplingGrid& grid,
                    const CellPartition& partition, const AnchorSet* anchors);

// Log-scale BER curves, one per (scheme, detector, L, N, M, rho_tar) group;
// bound columns render as dashed companions. Built purely from CSV rows so
// plots regenerate without re-simulation. Bound values above 1 are clipped
// here only.
void write_ber_svg(const std::string& path, const std::vector<BerCsvRow>& rows);

}  // namespace maim
