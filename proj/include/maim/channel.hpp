#pragma once

#include <complex>
#include <vector>

#include "maim/rng.hpp"

namespace maim {

using cplx = std::complex<double>;

struct Position {
  double x = 0.0;
  double y = 0.0;
};

struct Path {
  double theta = 0.0;  // elevation AoD, radians
  double phi = 0.0;    // azimuth AoD, radians
  cplx gain{1.0, 0.0};
};

// L propagation paths plus the carrier wavelength. Sampled gains have
// per-path variance 1/L, so the expected total power is 1.
struct PathProfile {
  std::vector<Path> paths;
  double wavelength = 0.0;

  int L() const { return static_cast<int>(paths.size()); }
};

using ChannelVector = std::vector<cplx>;

// Per-sampling-point channel vectors, stored flat: entry l of point q is
// data[q * L + l]. All vectors share one length L.
struct ChannelSet {
  int L = 0;
  std::vector<cplx> data;

  int Q() const { return L > 0 ? static_cast<int>(data.size()) / L : 0; }
  const cplx* at(int q) const { return data.data() + static_cast<std::size_t>(q) * L; }
};

// Path-length difference of path l (0-based) between position t and the
// region origin: x sin(theta) cos(phi) + y cos(theta). Meters.
double path_delay(const PathProfile& profile, int l, Position t);

// Entry l is e^{j (2pi/lambda) rho_l(t)}; every entry has unit magnitude.
ChannelVector field_response(const PathProfile& profile, Position t);

// Gain-weighted field response: entry l is gain_l e^{j (2pi/lambda) rho_l(t)}.
// The squared norm equals sum |gain_l|^2 at every position.
ChannelVector channel_at(const PathProfile& profile, Position t);

// Angles i.i.d. uniform on [0, 2pi); gains circular complex Gaussian with
// variance 1/L per path. Same stream state reproduces the profile exactly.
PathProfile sample_profile(Rng& rng, int L, double wavelength);

// Replaces every path gain with 1 while keeping the angles; gives the plain
// unit-modulus field-response channel.
void set_unit_gains(PathProfile& profile);

}  // namespace maim
