#pragma once

// Independent reference implementations used only by tests. Everything here
// is written directly from the defining formulas, avoiding the library's
// algebraic shortcuts, so agreement is meaningful.

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <vector>

namespace oracles {

using cplx = std::complex<double>;

// Zeroth-order Bessel function by Maclaurin series: sum_k (-x^2/4)^k / (k!)^2.
// Accurate to machine precision for |x| <= 4.
inline double j0_series(double x) {
  const long double q = -static_cast<long double>(x) * x / 4.0L;
  long double term = 1.0L, sum = 1.0L;
  for (int k = 1; k < 80; ++k) {
    term *= q / (static_cast<long double>(k) * k);
    sum += term;
    if (std::fabs(static_cast<double>(term)) < 1e-20) break;
  }
  return static_cast<double>(sum);
}

// Gaussian tail probability by composite Simpson integration of the density
// over [x, x+12]; the remainder beyond is below 1e-30 for x >= 0.
inline double q_integral(double x) {
  const long double a = x, b = x + 12.0L;
  const int n = 24000;  // even
  const long double h = (b - a) / n;
  const long double inv = 1.0L / std::sqrt(2.0L * 3.14159265358979323846264338327950288L);
  auto f = [&](long double t) { return inv * std::exp(-t * t / 2.0L); };
  long double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * ((i % 2) ? 4.0L : 2.0L);
  return static_cast<double>(s * h / 3.0L);
}

inline double bpsk_ber(double snr_db) {
  const double gamma = std::pow(10.0, snr_db / 10.0);
  return 0.5 * std::erfc(std::sqrt(gamma));
}

// Euclidean distance between two complex vectors, straight from the
// definition.
inline double vec_dist(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double acc = 0.0;
  for (std::size_t l = 0; l < a.size(); ++l) acc += std::norm(a[l] - b[l]);
  return std::sqrt(acc);
}

// Calls fn with every size-n subset of {0..q-1}.
inline void for_each_subset(int q, int n, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> pick(static_cast<std::size_t>(n));
  const std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == n) {
      fn(pick);
      return;
    }
    for (int v = start; v <= q - (n - depth); ++v) {
      pick[static_cast<std::size_t>(depth)] = v;
      rec(v + 1, depth + 1);
    }
  };
  rec(0, 0);
}

// Channel vectors as rows; returns the exhaustive max-min channel distance
// over all size-n anchor subsets.
inline double brute_force_maxmin(const std::vector<std::vector<cplx>>& h, int n) {
  double best = -1.0;
  for_each_subset(static_cast<int>(h.size()), n, [&](const std::vector<int>& pick) {
    double dmin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pick.size(); ++i)
      for (std::size_t j = i + 1; j < pick.size(); ++j)
        dmin = std::min(dmin, vec_dist(h[static_cast<std::size_t>(pick[i])],
                                       h[static_cast<std::size_t>(pick[j])]));
    best = std::max(best, dmin);
  });
  return best;
}

// Pairwise joint metric min_{m,n} |h_i s_m - h_j s_n| from the definition.
inline double joint_pair_dist(const std::vector<cplx>& hi, const std::vector<cplx>& hj,
                              const std::vector<cplx>& symbols) {
  double best = std::numeric_limits<double>::infinity();
  std::vector<cplx> a(hi.size()), b(hj.size());
  for (const cplx& sm : symbols) {
    for (std::size_t l = 0; l < hi.size(); ++l) a[l] = hi[l] * sm;
    for (const cplx& sn : symbols) {
      for (std::size_t l = 0; l < hj.size(); ++l) b[l] = hj[l] * sn;
      best = std::min(best, vec_dist(a, b));
    }
  }
  return best;
}

inline double brute_force_joint_maxmin(const std::vector<std::vector<cplx>>& h,
                                       const std::vector<cplx>& symbols, int n) {
  double best = -1.0;
  for_each_subset(static_cast<int>(h.size()), n, [&](const std::vector<int>& pick) {
    double dmin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pick.size(); ++i)
      for (std::size_t j = i + 1; j < pick.size(); ++j)
        dmin = std::min(dmin, joint_pair_dist(h[static_cast<std::size_t>(pick[i])],
                                              h[static_cast<std::size_t>(pick[j])], symbols));
    best = std::max(best, dmin);
  });
  return best;
}

inline int hamming(unsigned a, unsigned b) {
  unsigned x = a ^ b;
  int w = 0;
  while (x) {
    w += static_cast<int>(x & 1u);
    x >>= 1;
  }
  return w;
}

// Union bound as the literal ordered double sum in extended precision.
// points[k] is the noiseless received vector of hypothesis k.
inline double abep_double_sum(const std::vector<std::vector<cplx>>& points,
                              const std::vector<unsigned>& labels, int total_bits, double N0) {
  const std::size_t K = points.size();
  long double acc = 0.0L;
  for (std::size_t i = 0; i < K; ++i) {
    for (std::size_t j = 0; j < K; ++j) {
      if (i == j) continue;
      const long double d = vec_dist(points[i], points[j]);
      const long double arg = d / (2.0L * std::sqrt(static_cast<long double>(N0)));
      acc += hamming(labels[i], labels[j]) * 0.5L * std::erfc(arg);
    }
  }
  return static_cast<double>(acc / (static_cast<long double>(K) * total_bits));
}

}  // namespace oracles
