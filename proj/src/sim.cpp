#include "maim/sim.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "maim/errors.hpp"

namespace maim {

namespace {

constexpr double kEs = 1.0;  // Es/N0 sweeps move N0; selection metrics scale out Es

struct TaskCounts {
  long long bits = 0;
  long long errs = 0;
  long long idx_errs = 0;
  long long sym_errs = 0;
  long long metric_evals = 0;
};

template <typename F>
void parallel_for_tasks(int n_tasks, F&& fn) {
  const int workers = std::min(worker_count(), n_tasks);
  if (workers <= 1) {
    for (int i = 0; i < n_tasks; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::mutex err_mutex;
  std::exception_ptr err;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= n_tasks) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mutex);
          if (!err) err = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

double noise_power(double snr_db) { return kEs * std::pow(10.0, -snr_db / 10.0); }

long per_realization_target(const SimConfig& cfg) {
  if (cfg.target_bit_errors <= 0) return 0;
  return (cfg.target_bit_errors + cfg.realizations - 1) / cfg.realizations;
}

// One realization's symbol loop for one SNR point over an arbitrary
// transmit-port rule and detector closure.
template <typename PortFn, typename DetectFn>
TaskCounts run_point(const SimConfig& cfg, std::size_t snr_index, int r, int n_states,
                     const Constellation& cons, const ChannelSet& channels, int symbol_bits,
                     int index_bits, PortFn&& port_of, DetectFn&& detect) {
  const int L = channels.L;
  const double sigma = std::sqrt(noise_power(cfg.snr_db[snr_index]) / 2.0);
  const double amp = std::sqrt(kEs);
  const std::uint32_t sym_mask = (1u << symbol_bits) - 1u;
  const int total_bits = symbol_bits + index_bits;
  const long stop = per_realization_target(cfg);

  Rng rng = make_stream(cfg.seed, kStreamSymbols, static_cast<std::uint64_t>(r),
                        static_cast<std::uint64_t>(snr_index));
  std::uniform_int_distribution<int> draw_state(0, n_states - 1);
  std::uniform_int_distribution<int> draw_symbol(0, cons.M - 1);

  std::vector<cplx> clean(static_cast<std::size_t>(L));
  std::vector<cplx> y(static_cast<std::size_t>(L));

  TaskCounts acc;
  for (long t = 0; t < cfg.symbols_per_point; ++t) {
    if (stop > 0 && acc.errs >= stop) break;
    const int c = draw_state(rng);
    const int m = draw_symbol(rng);
    const int port = port_of(c, rng);
    const cplx scaled = amp * cons.symbols[static_cast<std::size_t>(m)];
    const cplx* h = channels.at(port);
    for (int l = 0; l < L; ++l) clean[static_cast<std::size_t>(l)] = scaled * h[l];
    add_noise_inplace(y.data(), clean.data(), L, sigma, rng);

    const DetectionResult res = detect(y.data());
    const std::uint32_t tx =
        (static_cast<std::uint32_t>(c) << symbol_bits) | cons.labels[static_cast<std::size_t>(m)];
    const std::uint32_t rx = (static_cast<std::uint32_t>(res.index_hat) << symbol_bits) |
                             cons.labels[static_cast<std::size_t>(res.symbol_hat)];
    const std::uint32_t diff = tx ^ rx;
    const int sym_err = std::popcount(diff & sym_mask);
    const int idx_err = std::popcount(diff >> symbol_bits);
    acc.errs += sym_err + idx_err;
    acc.sym_errs += sym_err;
    acc.idx_errs += idx_err;
    acc.metric_evals += res.metric_evals;
    acc.bits += total_bits;
  }
  return acc;
}

BerCurve reduce_rows(const SimConfig& cfg, const std::vector<TaskCounts>& rows) {
  const std::size_t S = cfg.snr_db.size();
  BerCurve curve;
  curve.points.resize(S);
  for (std::size_t si = 0; si < S; ++si) {
    BerPoint& p = curve.points[si];
    p.snr_db = cfg.snr_db[si];
    for (int r = 0; r < cfg.realizations; ++r) {
      const TaskCounts& t = rows[static_cast<std::size_t>(r) * S + si];
      p.bits_sent += t.bits;
      p.bit_errors += t.errs;
      p.index_bit_errors += t.idx_errs;
      p.symbol_bit_errors += t.sym_errs;
      p.metric_evals += t.metric_evals;
    }
  }
  return curve;
}

}  // namespace

const char* detector_name(Detector d) {
  switch (d) {
    case Detector::MLFull: return "ml_full";
    case Detector::MLAnchor: return "ml_anchor";
    case Detector::TwoStage: return "two_stage";
  }
  throw std::invalid_argument("unknown detector");
}

PathProfile realization_profile(const SimConfig& cfg, int r) {
  Rng rng = make_stream(cfg.seed, kStreamProfile, static_cast<std::uint64_t>(r), 0);
  PathProfile profile = sample_profile(rng, cfg.L, cfg.wavelength);
  if (cfg.unit_gains) set_unit_gains(profile);
  return profile;
}

int worker_count() {
  if (const char* env = std::getenv("MAIM_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<int>(v);
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

void validate(const SimConfig& cfg) {
  if (!(cfg.wavelength > 0.0)) throw std::invalid_argument("wavelength must be positive");
  if (!(cfg.half_extent_G > 0.0)) throw std::invalid_argument("region half extent must be positive");
  if (!(cfg.rho_tar >= 0.0 && cfg.rho_tar < 1.0))
    throw std::invalid_argument("similarity target must lie in [0, 1)");
  if (cfg.L < 1) throw std::invalid_argument("path count must be at least 1");
  if (!qam_supported(cfg.M)) throw std::invalid_argument("unsupported modulation order");
  log2_exact(cfg.N, "index state count");
  if (cfg.snr_db.empty()) throw std::invalid_argument("SNR list must be nonempty");
  if (cfg.symbols_per_point < 1) throw std::invalid_argument("symbols per point must be positive");
  if (cfg.realizations < 1) throw std::invalid_argument("realization count must be positive");
  if (cfg.target_bit_errors < 0) throw std::invalid_argument("error target cannot be negative");
  if (cfg.I_max < 1) throw std::invalid_argument("sweep limit must be positive");
  if (cfg.detector == Detector::TwoStage && (cfg.two_stage_K < 1 || cfg.two_stage_K > cfg.N))
    throw std::invalid_argument("candidate cell count must be in [1, N]");
  if (cfg.scheme == Scheme::Random && cfg.detector == Detector::MLAnchor)
    throw std::invalid_argument("the random scheme defines no anchors for the anchor detector");
  const bool cell_indexed = cfg.scheme != Scheme::GlobalMaxMin && cfg.scheme != Scheme::JointMaxMin;
  if (!cell_indexed && cfg.detector != Detector::MLAnchor)
    throw std::invalid_argument("selection-ranked schemes require the anchor detector");
}

BerCurve run_ber(const SimConfig& cfg) {
  validate(cfg);
  const SamplingGrid grid = build_grid(cfg.half_extent_G, cfg.wavelength, cfg.rho_tar);
  const CellPartition part = partition_cells(grid, cfg.N);
  const Constellation cons = build_qam(cfg.M);
  const int symbol_bits = log2_exact(cfg.M, "modulation order");
  const int index_bits = log2_exact(cfg.N, "index state count");
  const std::size_t S = cfg.snr_db.size();

  std::vector<TaskCounts> rows(static_cast<std::size_t>(cfg.realizations) * S);
  parallel_for_tasks(cfg.realizations, [&](int r) {
    const PathProfile profile = realization_profile(cfg, r);
    const ChannelSet channels = build_channel_set(profile, grid);

    AnchorSet anchors;
    if (cfg.scheme != Scheme::Random)
      anchors = select_anchors(cfg.scheme, {grid, part, channels, cons, cfg.I_max});

    HypothesisSet anchor_hyps;
    HypothesisSet grid_hyps;
    if (cfg.detector == Detector::MLAnchor) {
      anchor_hyps = make_hypotheses(channels, anchors.indices, cons, kEs);
    } else {
      grid_hyps = make_grid_hypotheses(channels, cons, kEs);
      if (cfg.detector == Detector::TwoStage) {
        const AnchorSet stage1 = geometric_anchors(grid, part);
        anchor_hyps = make_hypotheses(channels, stage1.indices, cons, kEs);
      }
    }
    TwoStageScratch scratch;

    const auto port_of = [&](int c, Rng& rng) {
      return cfg.scheme == Scheme::Random ? random_in_cell(part, c, rng)
                                          : anchors.indices[static_cast<std::size_t>(c)];
    };
    const auto detect = [&](const cplx* y) {
      switch (cfg.detector) {
        case Detector::MLAnchor: return ml_anchor(y, anchor_hyps);
        case Detector::MLFull: return ml_full_grid(y, grid_hyps, part);
        case Detector::TwoStage:
          return two_stage_detect(y, anchor_hyps, grid_hyps, part, cfg.two_stage_K, scratch);
      }
      throw InternalError("unhandled detector");
    };

    for (std::size_t si = 0; si < S; ++si)
      rows[static_cast<std::size_t>(r) * S + si] =
          run_point(cfg, si, r, cfg.N, cons, channels, symbol_bits, index_bits, port_of, detect);
  });
  return reduce_rows(cfg, rows);
}

AbepCurve run_bound(const SimConfig& cfg) {
  validate(cfg);
  if (cfg.scheme == Scheme::Random)
    throw std::invalid_argument("the union bound needs deterministic anchors (schemes 2-6)");
  const SamplingGrid grid = build_grid(cfg.half_extent_G, cfg.wavelength, cfg.rho_tar);
  const CellPartition part = partition_cells(grid, cfg.N);
  const Constellation cons = build_qam(cfg.M);
  const std::size_t S = cfg.snr_db.size();

  std::vector<double> per_real(static_cast<std::size_t>(cfg.realizations) * S, 0.0);
  parallel_for_tasks(cfg.realizations, [&](int r) {
    const PathProfile profile = realization_profile(cfg, r);
    const ChannelSet channels = build_channel_set(profile, grid);
    const AnchorSet anchors = select_anchors(cfg.scheme, {grid, part, channels, cons, cfg.I_max});
    const JointConstellation joint = build_joint(channels, anchors.indices, cons, kEs);
    for (std::size_t si = 0; si < S; ++si)
      per_real[static_cast<std::size_t>(r) * S + si] =
          abep_bound(joint, noise_power(cfg.snr_db[si]));
  });

  AbepCurve curve;
  curve.snr_db = cfg.snr_db;
  curve.bound.assign(S, 0.0);
  for (std::size_t si = 0; si < S; ++si) {
    double acc = 0.0;
    for (int r = 0; r < cfg.realizations; ++r)
      acc += per_real[static_cast<std::size_t>(r) * S + si];
    curve.bound[si] = acc / cfg.realizations;
  }
  return curve;
}

BaselineResult qam_baseline(const SimConfig& cfg) {
  validate(cfg);
  const int wanted = cfg.M * cfg.N;  // same bits per use folded into one alphabet
  BaselineResult out;
  out.effective_M = qam_supported(wanted) ? wanted : largest_supported_qam(wanted);
  if (out.effective_M != wanted)
    std::cerr << "warning: " << wanted << "-QAM baseline unsupported, using "
              << out.effective_M << "-QAM (" << log2_exact(out.effective_M, "baseline order")
              << " bits per use)\n";

  const SamplingGrid grid = build_grid(cfg.half_extent_G, cfg.wavelength, cfg.rho_tar);
  const Constellation cons = build_qam(out.effective_M);
  const int symbol_bits = log2_exact(out.effective_M, "baseline order");
  const std::size_t S = cfg.snr_db.size();

  std::vector<TaskCounts> rows(static_cast<std::size_t>(cfg.realizations) * S);
  parallel_for_tasks(cfg.realizations, [&](int r) {
    const PathProfile profile = realization_profile(cfg, r);
    const ChannelSet channels = build_channel_set(profile, grid);

    int best_port = 0;
    double best_norm = -1.0;
    for (int q = 0; q < channels.Q(); ++q) {
      const cplx* h = channels.at(q);
      double norm = 0.0;
      for (int l = 0; l < channels.L; ++l) norm += std::norm(h[l]);
      if (norm > best_norm) {
        best_norm = norm;
        best_port = q;
      }
    }

    const HypothesisSet hyps = make_hypotheses(channels, {best_port}, cons, kEs);
    const auto port_of = [&](int, Rng&) { return best_port; };
    const auto detect = [&](const cplx* y) { return ml_anchor(y, hyps); };
    for (std::size_t si = 0; si < S; ++si)
      rows[static_cast<std::size_t>(r) * S + si] =
          run_point(cfg, si, r, 1, cons, channels, symbol_bits, 0, port_of, detect);
  });
  out.curve = reduce_rows(cfg, rows);
  return out;
}

}  // namespace maim
