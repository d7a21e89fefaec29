#include "maim/modulation.hpp"

#include <cmath>
#include <stdexcept>

#include "maim/errors.hpp"

namespace maim {

namespace {

std::uint32_t gray(std::uint32_t i) { return i ^ (i >> 1); }

// Axis levels -K+1, -K+3, ..., K-1 in ascending order.
double level(int i, int K) { return 2.0 * i - (K - 1); }

Constellation square_qam(int M) {
  const int K = static_cast<int>(std::lround(std::sqrt(static_cast<double>(M))));
  const int axis_bits = log2_exact(K, "QAM axis size");
  const double scale = 1.0 / std::sqrt(2.0 * (K * K - 1) / 3.0);
  Constellation c;
  c.M = M;
  for (int i = 0; i < K; ++i)
    for (int j = 0; j < K; ++j) {
      c.symbols.emplace_back(level(i, K) * scale, level(j, K) * scale);
      c.labels.push_back((gray(static_cast<std::uint32_t>(i)) << axis_bits) |
                         gray(static_cast<std::uint32_t>(j)));
    }
  return c;
}

Constellation rect8_qam() {
  const double scale = 1.0 / std::sqrt(6.0);  // mean of {1,9} + mean of {1} = 6
  Constellation c;
  c.M = 8;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 2; ++j) {
      c.symbols.emplace_back(level(i, 4) * scale, level(j, 2) * scale);
      c.labels.push_back((gray(static_cast<std::uint32_t>(i)) << 1) |
                         gray(static_cast<std::uint32_t>(j)));
    }
  return c;
}

// 32-cross: an 8x4 Gray rectangle whose outer |I|=7 columns fold onto the
// |Q|=5 extensions, keeping the labels of the folded rectangle (quasi-Gray).
Constellation cross32_qam() {
  const double scale = 1.0 / std::sqrt(20.0);  // total energy 640 over 32 points
  Constellation c;
  c.M = 32;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 4; ++j) {
      double x = level(i, 8);
      double y = level(j, 4);
      if (std::abs(x) > 5.0) {
        const double sx = x > 0 ? 1.0 : -1.0;
        const double sy = y > 0 ? 1.0 : -1.0;
        x = sx * (4.0 - std::abs(y));
        y = sy * 5.0;
      }
      c.symbols.emplace_back(x * scale, y * scale);
      c.labels.push_back((gray(static_cast<std::uint32_t>(i)) << 2) |
                         gray(static_cast<std::uint32_t>(j)));
    }
  return c;
}

}  // namespace

int log2_exact(int v, const char* what) {
  if (v < 1 || (v & (v - 1)) != 0)
    throw std::invalid_argument(std::string(what) + " must be a power of two, got " +
                                std::to_string(v));
  int b = 0;
  while ((1 << b) < v) ++b;
  return b;
}

int Constellation::bits() const { return log2_exact(M, "constellation size"); }

bool qam_supported(int M) {
  switch (M) {
    case 2: case 4: case 8: case 16: case 32: case 64: case 256: return true;
    default: return false;
  }
}

int largest_supported_qam(int M) {
  static constexpr int sizes[] = {256, 64, 32, 16, 8, 4, 2};
  for (int s : sizes)
    if (s <= M) return s;
  throw std::invalid_argument("no supported QAM size at or below " + std::to_string(M));
}

Constellation build_qam(int M) {
  log2_exact(M, "modulation order M");
  if (!qam_supported(M))
    throw std::invalid_argument("unsupported QAM size " + std::to_string(M));
  if (M == 2) {
    Constellation c;
    c.M = 2;
    c.symbols = {cplx(1.0, 0.0), cplx(-1.0, 0.0)};
    c.labels = {0u, 1u};
    return c;
  }
  if (M == 8) return rect8_qam();
  if (M == 32) return cross32_qam();
  return square_qam(M);
}

BitSplit split_bits(const std::string& bits, int N, int M) {
  const int nbi = log2_exact(N, "index state count N");
  const int nbs = log2_exact(M, "modulation order M");
  if (static_cast<int>(bits.size()) != nbi + nbs)
    throw std::invalid_argument("bit string length " + std::to_string(bits.size()) +
                                " does not match " + std::to_string(nbi + nbs));
  for (char ch : bits)
    if (ch != '0' && ch != '1')
      throw std::invalid_argument("bit string may contain only 0 and 1");
  return BitSplit{bits.substr(0, static_cast<std::size_t>(nbi)),
                  bits.substr(static_cast<std::size_t>(nbi))};
}

JointConstellation build_joint(const ChannelSet& channels,
                               const std::vector<int>& anchor_indices,
                               const Constellation& constellation, double Es) {
  if (!(Es > 0.0)) throw std::invalid_argument("Es must be positive");
  const int N = static_cast<int>(anchor_indices.size());
  JointConstellation joint;
  joint.N = N;
  joint.M = constellation.M;
  joint.L = channels.L;
  joint.Es = Es;
  joint.index_bits = log2_exact(N, "anchor count N");
  joint.symbol_bits = constellation.bits();
  const double amp = std::sqrt(Es);
  joint.values.resize(static_cast<std::size_t>(N) * constellation.M * channels.L);
  joint.labels.resize(static_cast<std::size_t>(N) * constellation.M);
  for (int c = 0; c < N; ++c) {
    const int q = anchor_indices[static_cast<std::size_t>(c)];
    if (q < 0 || q >= channels.Q())
      throw std::out_of_range("anchor port " + std::to_string(q) + " outside channel set");
    const cplx* h = channels.at(q);
    for (int m = 0; m < constellation.M; ++m) {
      const cplx factor = amp * constellation.symbols[static_cast<std::size_t>(m)];
      cplx* dst = joint.values.data() +
                  (static_cast<std::size_t>(c) * constellation.M + m) * channels.L;
      for (int l = 0; l < channels.L; ++l) dst[l] = factor * h[l];
      joint.labels[static_cast<std::size_t>(c) * constellation.M + m] =
          (static_cast<std::uint32_t>(c) << joint.symbol_bits) |
          constellation.labels[static_cast<std::size_t>(m)];
    }
  }
  return joint;
}

}  // namespace maim
