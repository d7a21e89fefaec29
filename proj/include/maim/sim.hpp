#pragma once

#include <cstdint>
#include <vector>

#include "maim/analysis.hpp"
#include "maim/anchors.hpp"
#include "maim/detect.hpp"

namespace maim {

enum class Detector {
  MLFull = 0,    // exhaustive search over all grid ports (cell index recovery)
  MLAnchor = 1,  // search over the N anchor hypotheses
  TwoStage = 2,  // coarse anchor ranking, fine search in the top-K cells
};

const char* detector_name(Detector d);

struct SimConfig {
  double wavelength = 0.3;   // meters (1 GHz carrier)
  double half_extent_G = 1.0;
  double rho_tar = 0.9;
  int L = 6;
  int M = 4;
  int N = 16;
  Scheme scheme = Scheme::Geometric;
  Detector detector = Detector::MLAnchor;
  int two_stage_K = 2;
  std::vector<double> snr_db{0.0};   // Es/N0 per point, dB
  long symbols_per_point = 200000;   // per channel realization
  int realizations = 20;
  std::uint64_t seed = 1;
  int I_max = 20;
  long target_bit_errors = 500;      // aggregate early-stop target; 0 disables
  bool unit_gains = false;           // unit-modulus channel (no fading gains)
};

struct BerPoint {
  double snr_db = 0.0;
  long long bits_sent = 0;
  long long bit_errors = 0;
  long long index_bit_errors = 0;
  long long symbol_bit_errors = 0;
  long long metric_evals = 0;

  double ber() const { return bits_sent > 0 ? static_cast<double>(bit_errors) / bits_sent : 0.0; }
};

struct BerCurve {
  std::vector<BerPoint> points;
};

// Worker count: the MAIM_WORKERS environment variable when set to a positive
// integer, otherwise the hardware concurrency.
int worker_count();

// Propagation environment of realization r under the configured seed. The
// stream depends only on (seed, r), so the ensemble is shared across grids,
// schemes, detectors and SNR sweeps.
PathProfile realization_profile(const SimConfig& config, int r);

// Validates the configuration and throws std::invalid_argument on any
// violation, including scheme/detector mismatches: Scheme 1 has no anchors
// (grid detectors only) and Schemes 5-6 have no cell-aligned index map
// (anchor detector only).
void validate(const SimConfig& config);

// Monte Carlo BER over independent channel realizations. Results are a pure
// function of the configuration: realizations run as parallel tasks with
// dedicated random streams, counters merge as integer sums, and the per-point
// early stop applies the per-realization share of target_bit_errors.
BerCurve run_ber(const SimConfig& config);

// Union bound averaged over the channel realizations of the same seed.
// Schemes 2-6 only (deterministic anchors).
AbepCurve run_bound(const SimConfig& config);

struct BaselineResult {
  int effective_M = 0;  // actual alphabet size after the support cap
  BerCurve curve;
};

// Same-spectral-efficiency single-position QAM benchmark: M' = M * 2^b index
// bits folded into the alphabet, transmitted over the strongest sampled port
// of each realization. Unsupported M' falls back to the largest supported
// size with a warning on stderr.
BaselineResult qam_baseline(const SimConfig& config);

}  // namespace maim
