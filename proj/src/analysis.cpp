#include "maim/analysis.hpp"

#include <cmath>
#include <bit>
#include <limits>
#include <stdexcept>

namespace maim {

ThroughputInfo throughput(int M, int N) {
  ThroughputInfo t;
  t.symbol_bits = log2_exact(M, "modulation order");
  if (N < 1) throw std::invalid_argument("index state count must be at least 1");
  t.index_bits = N == 1 ? 0 : std::bit_width(static_cast<unsigned>(N)) - 1;
  t.total_bits = t.symbol_bits + t.index_bits;
  return t;
}

double similarity(const cplx* fm, const cplx* fn, int L) {
  if (L <= 0) throw std::invalid_argument("similarity needs a positive length");
  cplx acc{0.0, 0.0};
  for (int l = 0; l < L; ++l) acc += std::conj(fm[l]) * fn[l];
  return std::abs(acc) / L;
}

double similarity(const ChannelVector& fm, const ChannelVector& fn) {
  if (fm.size() != fn.size()) throw std::invalid_argument("similarity inputs differ in length");
  return similarity(fm.data(), fn.data(), static_cast<int>(fm.size()));
}

double q_func(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

double pep(const cplx* x1, const cplx* x2, int L, double N0) {
  if (!(N0 > 0.0)) throw std::invalid_argument("noise power must be positive");
  double d2 = 0.0;
  for (int l = 0; l < L; ++l) {
    const double re = x1[l].real() - x2[l].real();
    const double im = x1[l].imag() - x2[l].imag();
    d2 += re * re + im * im;
  }
  return q_func(std::sqrt(d2 / (2.0 * N0)));
}

double pep(const ChannelVector& x1, const ChannelVector& x2, double N0) {
  if (x1.size() != x2.size()) throw std::invalid_argument("pep inputs differ in length");
  return pep(x1.data(), x2.data(), static_cast<int>(x1.size()), N0);
}

double abep_bound(const JointConstellation& joint, double N0) {
  if (!(N0 > 0.0)) throw std::invalid_argument("noise power must be positive");
  const int K = joint.size();
  const int L = joint.L;
  double acc = 0.0;
  for (int i = 0; i < K; ++i) {
    const cplx* xi = joint.value(i);
    for (int j = i + 1; j < K; ++j) {
      const int w = std::popcount(joint.labels[static_cast<std::size_t>(i)] ^
                                  joint.labels[static_cast<std::size_t>(j)]);
      if (w == 0) throw std::invalid_argument("joint constellation labels are not distinct");
      acc += 2.0 * w * pep(xi, joint.value(j), L, N0);  // ordered pairs come in mirror twins
    }
  }
  return acc / (static_cast<double>(K) * joint.total_bits());
}

double joint_min_distance(const JointConstellation& joint) {
  const int K = joint.size();
  if (K < 2) throw std::invalid_argument("joint minimum distance needs at least 2 points");
  const int L = joint.L;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < K; ++i) {
    const cplx* xi = joint.value(i);
    for (int j = i + 1; j < K; ++j) {
      const cplx* xj = joint.value(j);
      double d2 = 0.0;
      for (int l = 0; l < L; ++l) {
        const double re = xi[l].real() - xj[l].real();
        const double im = xi[l].imag() - xj[l].imag();
        d2 += re * re + im * im;
      }
      if (d2 < best) best = d2;
    }
  }
  return std::sqrt(best);
}

double mean_adjacent_similarity(const SamplingGrid& grid, const PathProfile& profile) {
  const int nx = grid.nx;
  const int ny = grid.ny;
  if (nx < 2 || ny < 2) throw std::invalid_argument("adjacency needs at least a 2x2 grid");

  std::vector<ChannelVector> field(static_cast<std::size_t>(grid.Q()));
  for (int q = 0; q < grid.Q(); ++q)
    field[static_cast<std::size_t>(q)] = field_response(profile, grid.points[static_cast<std::size_t>(q)]);

  // Each unordered neighbour pair once: right, up, and the two diagonals.
  static constexpr int kSteps[4][2] = {{1, 0}, {0, 1}, {1, 1}, {-1, 1}};
  double acc = 0.0;
  long pairs = 0;
  for (int row = 0; row < ny; ++row) {
    for (int col = 0; col < nx; ++col) {
      const int q = row * nx + col;
      for (const auto& s : kSteps) {
        const int c2 = col + s[0];
        const int r2 = row + s[1];
        if (c2 < 0 || c2 >= nx || r2 >= ny) continue;
        const int p = r2 * nx + c2;
        acc += similarity(field[static_cast<std::size_t>(q)], field[static_cast<std::size_t>(p)]);
        ++pairs;
      }
    }
  }
  return acc / static_cast<double>(pairs);
}

}  // namespace maim
