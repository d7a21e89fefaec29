#pragma once

#include <vector>

#include "maim/channel.hpp"
#include "maim/grid.hpp"
#include "maim/modulation.hpp"

namespace maim {

enum class Scheme {
  Random = 1,        // uniform draw inside the activated cell, no anchors
  Geometric = 2,     // per cell, the point nearest the tile centroid
  SnrMax = 3,        // per cell, the point with the largest channel norm
  CellMaxMin = 4,    // per cell, greedy max-min channel distance sweeps
  GlobalMaxMin = 5,  // farthest-point sampling on channel distance, no cells
  JointMaxMin = 6,   // farthest-point sampling on joint constellation distance
};

const char* scheme_name(Scheme s);

// Ordered anchor ports: indices[i] transmits index state i. Cell-based
// schemes order by cell, selection-based schemes by selection rank.
struct AnchorSet {
  Scheme scheme = Scheme::Geometric;
  std::vector<int> indices;
  bool per_cell = false;

  int N() const { return static_cast<int>(indices.size()); }
};

// Uniform draw over the cell's member points; seeded determinism.
int random_in_cell(const CellPartition& partition, int c, Rng& rng);

// Ties (equidistant points, equal norms, equal metrics) always resolve to the
// lowest sampling index, so every selector is a pure function of its inputs.
AnchorSet geometric_anchors(const SamplingGrid& grid, const CellPartition& partition);

AnchorSet snr_anchors(const ChannelSet& channels, const CellPartition& partition);

// Starts from the geometric anchors, then sweeps cells in index order
// replacing each representative with the member that strictly improves its
// minimum channel distance to the other current representatives. Stops after
// a change-free sweep or I_max sweeps. The achieved min pairwise distance
// never drops below the initialization's.
AnchorSet cell_maxmin_anchors(const ChannelSet& channels, const SamplingGrid& grid,
                              const CellPartition& partition, int I_max);

// Farthest-point sampling: first the port with the largest average channel
// distance to all others, then repeatedly the port farthest from the chosen
// set. 2 <= N < Q.
AnchorSet global_maxmin_anchors(const ChannelSet& channels, int N);

// Same procedure with the pairwise port metric
// D(i,j) = min over symbol pairs (m,n) of |h_i s_m - h_j s_n|, i != j.
AnchorSet joint_maxmin_anchors(const ChannelSet& channels, int N,
                               const Constellation& constellation);

// min over i != j of |h_{a_i} - h_{a_j}|. Needs at least 2 anchors.
double min_channel_separation(const std::vector<int>& anchors, const ChannelSet& channels);

// Pairwise joint-constellation port distance used by scheme 6; exposed for
// oracle tests.
double joint_port_distance(const ChannelSet& channels, int i, int j,
                           const Constellation& constellation);

struct AnchorInputs {
  const SamplingGrid& grid;
  const CellPartition& partition;
  const ChannelSet& channels;
  const Constellation& constellation;
  int I_max = 20;
};

// Dispatch for schemes 2..6; Scheme::Random has no anchor set and throws.
AnchorSet select_anchors(Scheme scheme, const AnchorInputs& in);

}  // namespace maim
