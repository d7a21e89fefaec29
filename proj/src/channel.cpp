#include "maim/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "maim/errors.hpp"

namespace maim {

namespace {

void require_valid(const PathProfile& profile) {
  if (profile.paths.empty()) throw std::invalid_argument("path profile has no paths");
  if (!(profile.wavelength > 0.0)) throw std::invalid_argument("wavelength must be positive");
}

}  // namespace

double path_delay(const PathProfile& profile, int l, Position t) {
  require_valid(profile);
  if (l < 0 || l >= profile.L())
    throw std::out_of_range("path index " + std::to_string(l) + " outside [0, " +
                            std::to_string(profile.L()) + ")");
  const Path& p = profile.paths[static_cast<std::size_t>(l)];
  return t.x * std::sin(p.theta) * std::cos(p.phi) + t.y * std::cos(p.theta);
}

ChannelVector field_response(const PathProfile& profile, Position t) {
  require_valid(profile);
  const double k = 2.0 * std::numbers::pi / profile.wavelength;
  ChannelVector f(profile.paths.size());
  for (int l = 0; l < profile.L(); ++l) {
    const double phase = k * path_delay(profile, l, t);
    f[static_cast<std::size_t>(l)] = cplx(std::cos(phase), std::sin(phase));
  }
  return f;
}

ChannelVector channel_at(const PathProfile& profile, Position t) {
  ChannelVector h = field_response(profile, t);
  for (int l = 0; l < profile.L(); ++l)
    h[static_cast<std::size_t>(l)] *= profile.paths[static_cast<std::size_t>(l)].gain;
  return h;
}

PathProfile sample_profile(Rng& rng, int L, double wavelength) {
  if (L < 1) throw std::invalid_argument("path count must be at least 1");
  if (!(wavelength > 0.0)) throw std::invalid_argument("wavelength must be positive");
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::normal_distribution<double> gauss(0.0, std::sqrt(1.0 / (2.0 * L)));
  PathProfile profile;
  profile.wavelength = wavelength;
  profile.paths.resize(static_cast<std::size_t>(L));
  for (auto& p : profile.paths) {
    p.theta = angle(rng);
    p.phi = angle(rng);
    const double re = gauss(rng);
    const double im = gauss(rng);
    p.gain = cplx(re, im);
  }
  return profile;
}

void set_unit_gains(PathProfile& profile) {
  for (auto& p : profile.paths) p.gain = cplx(1.0, 0.0);
}

}  // namespace maim
