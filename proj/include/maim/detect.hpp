#pragma once

#include <cstdint>
#include <vector>

#include "maim/anchors.hpp"
#include "maim/grid.hpp"
#include "maim/modulation.hpp"

namespace maim {

// Precomputed noiseless hypothesis points sqrt(Es) * s_m * h, grouped per
// transmit port: hypothesis k = group * M + m lives at values[k * L .. +L).
struct HypothesisSet {
  int groups = 0;
  int M = 0;
  int L = 0;
  std::vector<cplx> values;

  int count() const { return groups * M; }
  const cplx* value(int k) const { return values.data() + static_cast<std::size_t>(k) * L; }
};

HypothesisSet make_hypotheses(const ChannelSet& channels, const std::vector<int>& ports,
                              const Constellation& constellation, double Es);

// All Q grid ports as groups.
HypothesisSet make_grid_hypotheses(const ChannelSet& channels,
                                   const Constellation& constellation, double Es);

struct DetectionResult {
  int index_hat = 0;           // cell (full grid / two stage) or anchor rank
  int symbol_hat = 0;
  double metric = 0.0;         // achieved squared distance
  int sampling_index_hat = -1; // grid port for full-grid style searches
  std::int64_t metric_evals = 0;
};

// Exhaustive argmin of |y - x_k|^2 over a hypothesis set. Ties go to the
// lowest hypothesis index (lowest group, then lowest symbol).
DetectionResult ml_scan(const cplx* y, const HypothesisSet& hyps);

// Search over all Q*M grid hypotheses; reported index is the cell of the
// winning port.
DetectionResult ml_full_grid(const cplx* y, const HypothesisSet& grid_hyps,
                             const CellPartition& partition);

// Search over the N*M anchor hypotheses.
DetectionResult ml_anchor(const cplx* y, const HypothesisSet& anchor_hyps);

struct TwoStageScratch {
  std::vector<double> cell_metric;
  std::vector<int> order;
  std::vector<char> selected;
};

// Stage 1 ranks cells by min_s |y - sqrt(Es) s h_{a_c}|^2 over the anchor
// hypotheses (ties to the lower cell); stage 2 runs ML over every grid
// hypothesis inside the top-K cells, scanned in ascending port order so that
// K = N reproduces ml_full_grid exactly, ties included.
DetectionResult two_stage_detect(const cplx* y, const HypothesisSet& anchor_hyps,
                                 const HypothesisSet& grid_hyps,
                                 const CellPartition& partition, int K,
                                 TwoStageScratch& scratch);

// Convenience overloads building the hypothesis sets internally.
DetectionResult ml_full_grid(const ChannelVector& y, double Es, const ChannelSet& channels,
                             const Constellation& constellation, const CellPartition& partition);
DetectionResult ml_anchor(const ChannelVector& y, double Es, const ChannelSet& channels,
                          const AnchorSet& anchors, const Constellation& constellation);
DetectionResult two_stage_detect(const ChannelVector& y, double Es, const ChannelSet& channels,
                                 const AnchorSet& geometric, const Constellation& constellation,
                                 const CellPartition& partition, int K);

// Adds circular complex Gaussian noise, each entry CN(0, N0): real and
// imaginary parts drawn in that order per entry with variance N0/2.
ChannelVector add_noise(const ChannelVector& clean, double N0, Rng& rng);
void add_noise_inplace(cplx* y, const cplx* clean, int L, double sigma, Rng& rng);

}  // namespace maim
