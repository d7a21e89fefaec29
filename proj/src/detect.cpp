#include "maim/detect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "maim/errors.hpp"

namespace maim {

namespace {

double dist2(const cplx* a, const cplx* b, int L) {
  double acc = 0.0;
  for (int l = 0; l < L; ++l) {
    const double re = a[l].real() - b[l].real();
    const double im = a[l].imag() - b[l].imag();
    acc += re * re + im * im;
  }
  return acc;
}

}  // namespace

HypothesisSet make_hypotheses(const ChannelSet& channels, const std::vector<int>& ports,
                              const Constellation& constellation, double Es) {
  if (!(Es > 0.0)) throw std::invalid_argument("symbol energy must be positive");
  if (ports.empty()) throw std::invalid_argument("hypothesis set needs at least one port");
  HypothesisSet h;
  h.groups = static_cast<int>(ports.size());
  h.M = constellation.M;
  h.L = channels.L;
  h.values.resize(static_cast<std::size_t>(h.groups) * h.M * h.L);
  const double amp = std::sqrt(Es);
  std::size_t k = 0;
  for (int g = 0; g < h.groups; ++g) {
    const int q = ports[static_cast<std::size_t>(g)];
    if (q < 0 || q >= channels.Q()) throw std::out_of_range("hypothesis port outside the grid");
    const cplx* hq = channels.at(q);
    for (int m = 0; m < h.M; ++m) {
      const cplx scaled = amp * constellation.symbols[static_cast<std::size_t>(m)];
      for (int l = 0; l < h.L; ++l) h.values[k++] = scaled * hq[l];
    }
  }
  return h;
}

HypothesisSet make_grid_hypotheses(const ChannelSet& channels,
                                   const Constellation& constellation, double Es) {
  std::vector<int> ports(static_cast<std::size_t>(channels.Q()));
  for (int q = 0; q < channels.Q(); ++q) ports[static_cast<std::size_t>(q)] = q;
  return make_hypotheses(channels, ports, constellation, Es);
}

DetectionResult ml_scan(const cplx* y, const HypothesisSet& hyps) {
  DetectionResult r;
  const int L = hyps.L;
  double best = std::numeric_limits<double>::infinity();
  int best_k = 0;
  const int K = hyps.count();
  for (int k = 0; k < K; ++k) {
    const cplx* x = hyps.value(k);
    double acc = 0.0;
    for (int l = 0; l < L; ++l) {
      const double re = y[l].real() - x[l].real();
      const double im = y[l].imag() - x[l].imag();
      acc += re * re + im * im;
      if (acc >= best) break;  // partial sums only grow; the earlier hit stays
    }
    if (acc < best) {
      best = acc;
      best_k = k;
    }
  }
  r.index_hat = best_k / hyps.M;
  r.symbol_hat = best_k % hyps.M;
  r.metric = best;
  r.metric_evals = K;
  return r;
}

DetectionResult ml_full_grid(const cplx* y, const HypothesisSet& grid_hyps,
                             const CellPartition& partition) {
  DetectionResult r = ml_scan(y, grid_hyps);
  r.sampling_index_hat = r.index_hat;
  r.index_hat = partition.cell_of[static_cast<std::size_t>(r.sampling_index_hat)];
  return r;
}

DetectionResult ml_anchor(const cplx* y, const HypothesisSet& anchor_hyps) {
  return ml_scan(y, anchor_hyps);
}

DetectionResult two_stage_detect(const cplx* y, const HypothesisSet& anchor_hyps,
                                 const HypothesisSet& grid_hyps,
                                 const CellPartition& partition, int K,
                                 TwoStageScratch& scratch) {
  const int N = anchor_hyps.groups;
  if (N != partition.N) throw InternalError("anchor hypotheses do not match the partition");
  if (K < 1 || K > N) throw std::invalid_argument("candidate cell count must be in [1, N]");
  const int L = anchor_hyps.L;
  const int M = anchor_hyps.M;

  // Stage 1: per-cell metric through the cell's representative.
  scratch.cell_metric.assign(static_cast<std::size_t>(N), 0.0);
  for (int c = 0; c < N; ++c) {
    double best = std::numeric_limits<double>::infinity();
    for (int m = 0; m < M; ++m) {
      const double d = dist2(y, anchor_hyps.value(c * M + m), L);
      if (d < best) best = d;
    }
    scratch.cell_metric[static_cast<std::size_t>(c)] = best;
  }
  scratch.order.resize(static_cast<std::size_t>(N));
  for (int c = 0; c < N; ++c) scratch.order[static_cast<std::size_t>(c)] = c;
  std::sort(scratch.order.begin(), scratch.order.end(), [&](int a, int b) {
    const double ma = scratch.cell_metric[static_cast<std::size_t>(a)];
    const double mb = scratch.cell_metric[static_cast<std::size_t>(b)];
    if (ma != mb) return ma < mb;
    return a < b;
  });

  // Stage 2: exhaustive scan restricted to ports of the K best cells, in
  // ascending port order so K = N matches the full-grid search exactly.
  const int Q = grid_hyps.groups;
  scratch.selected.assign(static_cast<std::size_t>(Q), 0);
  std::int64_t union_ports = 0;
  for (int r = 0; r < K; ++r) {
    const int c = scratch.order[static_cast<std::size_t>(r)];
    for (int q : partition.members[static_cast<std::size_t>(c)]) {
      scratch.selected[static_cast<std::size_t>(q)] = 1;
      ++union_ports;
    }
  }

  double best = std::numeric_limits<double>::infinity();
  int best_q = -1;
  int best_m = 0;
  for (int q = 0; q < Q; ++q) {
    if (!scratch.selected[static_cast<std::size_t>(q)]) continue;
    for (int m = 0; m < M; ++m) {
      const cplx* x = grid_hyps.value(q * M + m);
      double acc = 0.0;
      for (int l = 0; l < L; ++l) {
        const double re = y[l].real() - x[l].real();
        const double im = y[l].imag() - x[l].imag();
        acc += re * re + im * im;
        if (acc >= best) break;
      }
      if (acc < best) {
        best = acc;
        best_q = q;
        best_m = m;
      }
    }
  }
  if (best_q < 0) throw InternalError("two-stage candidate set was empty");

  DetectionResult r;
  r.sampling_index_hat = best_q;
  r.index_hat = partition.cell_of[static_cast<std::size_t>(best_q)];
  r.symbol_hat = best_m;
  r.metric = best;
  r.metric_evals = static_cast<std::int64_t>(N) * M + static_cast<std::int64_t>(M) * union_ports;
  return r;
}

DetectionResult ml_full_grid(const ChannelVector& y, double Es, const ChannelSet& channels,
                             const Constellation& constellation, const CellPartition& partition) {
  const HypothesisSet hyps = make_grid_hypotheses(channels, constellation, Es);
  return ml_full_grid(y.data(), hyps, partition);
}

DetectionResult ml_anchor(const ChannelVector& y, double Es, const ChannelSet& channels,
                          const AnchorSet& anchors, const Constellation& constellation) {
  const HypothesisSet hyps = make_hypotheses(channels, anchors.indices, constellation, Es);
  return ml_anchor(y.data(), hyps);
}

DetectionResult two_stage_detect(const ChannelVector& y, double Es, const ChannelSet& channels,
                                 const AnchorSet& geometric, const Constellation& constellation,
                                 const CellPartition& partition, int K) {
  const HypothesisSet anchor_hyps = make_hypotheses(channels, geometric.indices, constellation, Es);
  const HypothesisSet grid_hyps = make_grid_hypotheses(channels, constellation, Es);
  TwoStageScratch scratch;
  return two_stage_detect(y.data(), anchor_hyps, grid_hyps, partition, K, scratch);
}

void add_noise_inplace(cplx* y, const cplx* clean, int L, double sigma, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, sigma);
  for (int l = 0; l < L; ++l) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    y[l] = clean[l] + cplx(re, im);
  }
}

ChannelVector add_noise(const ChannelVector& clean, double N0, Rng& rng) {
  if (!(N0 > 0.0)) throw std::invalid_argument("noise power must be positive");
  ChannelVector y(clean.size());
  add_noise_inplace(y.data(), clean.data(), static_cast<int>(clean.size()), std::sqrt(N0 / 2.0),
                    rng);
  return y;
}

}  // namespace maim
