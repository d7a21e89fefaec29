#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "maim/channel.hpp"

namespace maim {

// Unit-average-energy M-QAM alphabet. symbols[m] carries bit label labels[m];
// labels are distinct and Gray-coded per axis for square sizes.
struct Constellation {
  int M = 0;
  std::vector<cplx> symbols;
  std::vector<std::uint32_t> labels;

  int bits() const;
};

// Supported sizes: 2 (BPSK), squares 4/16/64/256, crosses 8/32 with
// quasi-Gray labels. Throws std::invalid_argument otherwise.
Constellation build_qam(int M);

bool qam_supported(int M);

// Largest supported size not exceeding M. Throws if even 2 does not fit.
int largest_supported_qam(int M);

// exact log2 for powers of two; throws std::invalid_argument otherwise.
int log2_exact(int v, const char* what);

struct BitSplit {
  std::string index_bits;
  std::string symbol_bits;
};

// First floor(log2 N) characters select the index state, the rest the symbol.
// The input length must be exactly floor(log2 N) + log2 M.
BitSplit split_bits(const std::string& bits, int N, int M);

// All N*M noiseless received points sqrt(Es) * s_m * h_{a_c} with concatenated
// labels (index bits natural binary, symbol bits from the constellation).
struct JointConstellation {
  int N = 0;
  int M = 0;
  int L = 0;
  double Es = 1.0;
  int index_bits = 0;
  int symbol_bits = 0;
  std::vector<cplx> values;            // (c * M + m) * L + l
  std::vector<std::uint32_t> labels;   // (c << symbol_bits) | symbol label

  int size() const { return N * M; }
  int total_bits() const { return index_bits + symbol_bits; }
  const cplx* value(int k) const { return values.data() + static_cast<std::size_t>(k) * L; }
};

// anchor_indices holds the N transmit ports in label order; index state c is
// labelled with the natural binary encoding of c.
JointConstellation build_joint(const ChannelSet& channels,
                               const std::vector<int>& anchor_indices,
                               const Constellation& constellation, double Es);

}  // namespace maim
