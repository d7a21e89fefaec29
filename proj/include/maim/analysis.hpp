#pragma once

#include <vector>

#include "maim/grid.hpp"
#include "maim/modulation.hpp"

namespace maim {

struct ThroughputInfo {
  int symbol_bits = 0;  // log2 M
  int index_bits = 0;   // floor(log2 N)
  int total_bits = 0;   // bits per channel use
};

// M must be a power of two; N >= 1 contributes floor(log2 N) index bits.
ThroughputInfo throughput(int M, int N);

// |f_m^H f_n| / L for two equal-length field-response vectors.
double similarity(const ChannelVector& fm, const ChannelVector& fn);
double similarity(const cplx* fm, const cplx* fn, int L);

// Gaussian tail probability Q(x) = 0.5 erfc(x / sqrt(2)).
double q_func(double x);

// Pairwise error probability Q(|x1 - x2| / sqrt(2 N0)) between two noiseless
// received points under circular complex noise of total variance N0.
double pep(const ChannelVector& x1, const ChannelVector& x2, double N0);
double pep(const cplx* x1, const cplx* x2, int L, double N0);

// Union bound on the average bit error probability: the Hamming-weighted sum
// of pairwise error probabilities over all ordered pairs, normalized by the
// constellation size times bits per symbol. May exceed 1 at low SNR; the raw
// value is returned.
double abep_bound(const JointConstellation& joint, double N0);

// Smallest Euclidean distance over all unordered pairs of joint points,
// including pairs sharing an anchor. Needs at least 2 points.
double joint_min_distance(const JointConstellation& joint);

// Mean similarity over all adjacent grid point pairs (horizontal, vertical
// and diagonal neighbours) for one unit-gain field response ensemble.
double mean_adjacent_similarity(const SamplingGrid& grid, const PathProfile& profile);

struct AbepCurve {
  std::vector<double> snr_db;
  std::vector<double> bound;
};

}  // namespace maim
