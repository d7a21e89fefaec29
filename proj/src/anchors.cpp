#include "maim/anchors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "maim/errors.hpp"

namespace maim {

namespace {

double dist2(const cplx* a, const cplx* b, int L) {
  double d = 0.0;
  for (int l = 0; l < L; ++l) d += std::norm(a[l] - b[l]);
  return d;
}

double norm2(const cplx* a, int L) {
  double d = 0.0;
  for (int l = 0; l < L; ++l) d += std::norm(a[l]);
  return d;
}

cplx inner(const cplx* a, const cplx* b, int L) {
  cplx s{0.0, 0.0};
  for (int l = 0; l < L; ++l) s += a[l] * std::conj(b[l]);
  return s;
}

// Pairwise port metrics for farthest-point sampling. Both are evaluated
// through |a - b|^2 = |a|^2 + |b|^2 - 2 Re<a,b>, which costs O(L) per pair
// and, for the joint metric, O(M^2) scalar work after the one inner product.
struct ChannelMetric {
  const ChannelSet& ch;
  std::vector<double> p;  // per-port squared norms

  explicit ChannelMetric(const ChannelSet& channels) : ch(channels) {
    p.resize(static_cast<std::size_t>(ch.Q()));
    for (int q = 0; q < ch.Q(); ++q) p[static_cast<std::size_t>(q)] = norm2(ch.at(q), ch.L);
  }

  double dist(int i, int j) const {
    const double d2 = p[static_cast<std::size_t>(i)] + p[static_cast<std::size_t>(j)] -
                      2.0 * inner(ch.at(i), ch.at(j), ch.L).real();
    return std::sqrt(std::max(d2, 0.0));
  }
};

struct JointMetric {
  const ChannelSet& ch;
  std::vector<double> p;        // per-port squared norms
  std::vector<double> s2;       // |s_m|^2
  std::vector<cplx> cross;      // s_m * conj(s_n), m-major

  JointMetric(const ChannelSet& channels, const Constellation& con) : ch(channels) {
    p.resize(static_cast<std::size_t>(ch.Q()));
    for (int q = 0; q < ch.Q(); ++q) p[static_cast<std::size_t>(q)] = norm2(ch.at(q), ch.L);
    const int M = con.M;
    s2.resize(static_cast<std::size_t>(M));
    cross.resize(static_cast<std::size_t>(M) * M);
    for (int m = 0; m < M; ++m) {
      s2[static_cast<std::size_t>(m)] = std::norm(con.symbols[static_cast<std::size_t>(m)]);
      for (int n = 0; n < M; ++n)
        cross[static_cast<std::size_t>(m) * M + n] =
            con.symbols[static_cast<std::size_t>(m)] *
            std::conj(con.symbols[static_cast<std::size_t>(n)]);
    }
  }

  double dist(int i, int j) const {
    const cplx c = inner(ch.at(i), ch.at(j), ch.L);
    const int M = static_cast<int>(s2.size());
    double best = std::numeric_limits<double>::infinity();
    for (int m = 0; m < M; ++m)
      for (int n = 0; n < M; ++n) {
        const double d2 = s2[static_cast<std::size_t>(m)] * p[static_cast<std::size_t>(i)] +
                          s2[static_cast<std::size_t>(n)] * p[static_cast<std::size_t>(j)] -
                          2.0 * (cross[static_cast<std::size_t>(m) * M + n] * c).real();
        if (d2 < best) best = d2;
      }
    return std::sqrt(std::max(best, 0.0));
  }
};

// Farthest-point sampling over ports 0..Q-1. First pick: largest average
// distance to all others; then argmax of min distance to the chosen set,
// selected ports excluded, ties to the lowest index. Selection semantics
// match a precomputed distance matrix; rows are streamed to keep memory O(Q).
template <typename Metric>
std::vector<int> farthest_point_sample(const Metric& metric, int Q, int N) {
  std::vector<double> acc(static_cast<std::size_t>(Q), 0.0);
  for (int i = 0; i < Q; ++i)
    for (int j = i + 1; j < Q; ++j) {
      const double d = metric.dist(i, j);
      acc[static_cast<std::size_t>(i)] += d;
      acc[static_cast<std::size_t>(j)] += d;
    }
  int first = 0;
  for (int q = 1; q < Q; ++q)
    if (acc[static_cast<std::size_t>(q)] > acc[static_cast<std::size_t>(first)]) first = q;

  std::vector<int> sel{first};
  std::vector<char> taken(static_cast<std::size_t>(Q), 0);
  taken[static_cast<std::size_t>(first)] = 1;
  std::vector<double> dmin(static_cast<std::size_t>(Q));
  for (int q = 0; q < Q; ++q) dmin[static_cast<std::size_t>(q)] = metric.dist(q, first);
  while (static_cast<int>(sel.size()) < N) {
    int best = -1;
    double best_d = -1.0;
    for (int q = 0; q < Q; ++q) {
      if (taken[static_cast<std::size_t>(q)]) continue;
      if (dmin[static_cast<std::size_t>(q)] > best_d) {
        best_d = dmin[static_cast<std::size_t>(q)];
        best = q;
      }
    }
    sel.push_back(best);
    taken[static_cast<std::size_t>(best)] = 1;
    for (int q = 0; q < Q; ++q) {
      const double d = metric.dist(q, best);
      if (d < dmin[static_cast<std::size_t>(q)]) dmin[static_cast<std::size_t>(q)] = d;
    }
  }
  return sel;
}

void require_fps_range(int N, int Q) {
  if (N < 2 || N >= Q)
    throw std::invalid_argument("anchor count N = " + std::to_string(N) +
                                " must satisfy 2 <= N < Q = " + std::to_string(Q));
}

}  // namespace

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::Random: return "random";
    case Scheme::Geometric: return "geometric";
    case Scheme::SnrMax: return "snr";
    case Scheme::CellMaxMin: return "cell_maxmin";
    case Scheme::GlobalMaxMin: return "global_maxmin";
    case Scheme::JointMaxMin: return "joint_maxmin";
  }
  throw std::invalid_argument("unknown scheme");
}

int random_in_cell(const CellPartition& partition, int c, Rng& rng) {
  if (c < 0 || c >= partition.N)
    throw std::out_of_range("cell index " + std::to_string(c) + " outside [0, " +
                            std::to_string(partition.N) + ")");
  const auto& mem = partition.members[static_cast<std::size_t>(c)];
  if (mem.empty()) throw InternalError("cell " + std::to_string(c) + " has no members");
  std::uniform_int_distribution<std::size_t> pick(0, mem.size() - 1);
  return mem[pick(rng)];
}

AnchorSet geometric_anchors(const SamplingGrid& grid, const CellPartition& partition) {
  AnchorSet set;
  set.scheme = Scheme::Geometric;
  set.per_cell = true;
  set.indices.reserve(static_cast<std::size_t>(partition.N));
  for (int c = 0; c < partition.N; ++c) {
    const Position center = cell_center(partition, grid, c);
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (int q : partition.members[static_cast<std::size_t>(c)]) {
      const Position t = grid.points[static_cast<std::size_t>(q)];
      const double d = (t.x - center.x) * (t.x - center.x) + (t.y - center.y) * (t.y - center.y);
      if (d < best_d) {
        best_d = d;
        best = q;
      }
    }
    set.indices.push_back(best);
  }
  return set;
}

AnchorSet snr_anchors(const ChannelSet& channels, const CellPartition& partition) {
  AnchorSet set;
  set.scheme = Scheme::SnrMax;
  set.per_cell = true;
  set.indices.reserve(static_cast<std::size_t>(partition.N));
  for (int c = 0; c < partition.N; ++c) {
    int best = -1;
    double best_g = -1.0;
    for (int q : partition.members[static_cast<std::size_t>(c)]) {
      const double g = norm2(channels.at(q), channels.L);
      if (g > best_g) {
        best_g = g;
        best = q;
      }
    }
    set.indices.push_back(best);
  }
  return set;
}

AnchorSet cell_maxmin_anchors(const ChannelSet& channels, const SamplingGrid& grid,
                              const CellPartition& partition, int I_max) {
  if (partition.N < 2) throw std::invalid_argument("cell max-min needs at least 2 cells");
  if (I_max < 1) throw std::invalid_argument("I_max must be at least 1");
  AnchorSet set = geometric_anchors(grid, partition);
  set.scheme = Scheme::CellMaxMin;
  std::vector<int>& rep = set.indices;

  // Minimum squared channel distance from port q to the representatives of
  // all cells other than c.
  auto eta2 = [&](int q, int c) {
    double worst = std::numeric_limits<double>::infinity();
    for (int j = 0; j < partition.N; ++j) {
      if (j == c) continue;
      const double d = dist2(channels.at(q), channels.at(rep[static_cast<std::size_t>(j)]),
                             channels.L);
      if (d < worst) worst = d;
    }
    return worst;
  };

  for (int sweep = 0; sweep < I_max; ++sweep) {
    bool changed = false;
    for (int c = 0; c < partition.N; ++c) {
      const double incumbent = eta2(rep[static_cast<std::size_t>(c)], c);
      int best = rep[static_cast<std::size_t>(c)];
      double best_eta = incumbent;
      for (int q : partition.members[static_cast<std::size_t>(c)]) {
        const double e = eta2(q, c);
        if (e > best_eta) {
          best_eta = e;
          best = q;
        }
      }
      if (best != rep[static_cast<std::size_t>(c)]) {
        rep[static_cast<std::size_t>(c)] = best;
        changed = true;
      }
    }
    if (!changed) break;
  }
  return set;
}

AnchorSet global_maxmin_anchors(const ChannelSet& channels, int N) {
  require_fps_range(N, channels.Q());
  AnchorSet set;
  set.scheme = Scheme::GlobalMaxMin;
  set.indices = farthest_point_sample(ChannelMetric(channels), channels.Q(), N);
  return set;
}

AnchorSet joint_maxmin_anchors(const ChannelSet& channels, int N,
                               const Constellation& constellation) {
  require_fps_range(N, channels.Q());
  AnchorSet set;
  set.scheme = Scheme::JointMaxMin;
  set.indices = farthest_point_sample(JointMetric(channels, constellation), channels.Q(), N);
  return set;
}

double min_channel_separation(const std::vector<int>& anchors, const ChannelSet& channels) {
  if (anchors.size() < 2)
    throw std::invalid_argument("minimum separation needs at least 2 anchors");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < anchors.size(); ++i)
    for (std::size_t j = i + 1; j < anchors.size(); ++j) {
      const double d = dist2(channels.at(anchors[i]), channels.at(anchors[j]), channels.L);
      if (d < best) best = d;
    }
  return std::sqrt(best);
}

double joint_port_distance(const ChannelSet& channels, int i, int j,
                           const Constellation& constellation) {
  return JointMetric(channels, constellation).dist(i, j);
}

AnchorSet select_anchors(Scheme scheme, const AnchorInputs& in) {
  switch (scheme) {
    case Scheme::Random:
      throw std::invalid_argument("scheme 1 draws positions per transmission and has no anchor set");
    case Scheme::Geometric: return geometric_anchors(in.grid, in.partition);
    case Scheme::SnrMax: return snr_anchors(in.channels, in.partition);
    case Scheme::CellMaxMin:
      return cell_maxmin_anchors(in.channels, in.grid, in.partition, in.I_max);
    case Scheme::GlobalMaxMin: return global_maxmin_anchors(in.channels, in.partition.N);
    case Scheme::JointMaxMin:
      return joint_maxmin_anchors(in.channels, in.partition.N, in.constellation);
  }
  throw std::invalid_argument("unknown scheme");
}

}  // namespace maim
