#include "fockmaj/kk_series.hpp"

#include <algorithm>
#include <cmath>

#include "fockmaj/errors.hpp"
#include "fockmaj/summation.hpp"

namespace fockmaj {

namespace {

using boost::multiprecision::cpp_int;

cpp_int binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  cpp_int r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

void require_k(int k) {
  if (k < 0) throw DomainError("k must be non-negative");
}

// log(lambda^n C(n+k,k)^2)
double log_weight(double log_lambda, int k, std::size_t n) {
  const double nn = double(n);
  return nn * log_lambda +
         2.0 * (std::lgamma(nn + k + 1.0) - std::lgamma(k + 1.0) - std::lgamma(nn + 1.0));
}

struct KkWindow {
  std::vector<double> w;  // scaled by exp(-top)
  double top = 0.0;
  double tail_w = 0.0;    // omitted weight, same scale
  double sum = 0.0;
};

// Weight ratios lambda ((n+k+1)/(n+1))^2 decrease toward lambda, so the tail
// past the window is dominated by a geometric series with the last ratio.
KkWindow kk_window(double lambda, int k, std::size_t N) {
  require_k(k);
  if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("lambda must lie in (0, 1)");
  if (N == 0) throw TruncationTooCoarse("q_kk needs N >= 1");
  const double log_lambda = std::log(lambda);
  KkWindow out;
  out.top = log_weight(log_lambda, k, 0);
  for (std::size_t n = 1; n < N; ++n) out.top = std::max(out.top, log_weight(log_lambda, k, n));
  out.w.resize(N);
  for (std::size_t n = 0; n < N; ++n) out.w[n] = std::exp(log_weight(log_lambda, k, n) - out.top);
  const double nl = double(N - 1);
  const double r = lambda * std::pow((nl + k + 1.0) / (nl + 1.0), 2);
  if (!(r < 1.0)) throw TruncationTooCoarse("q_kk window ends before the spectrum decays");
  out.tail_w = out.w.back() * r / (1.0 - r);
  out.sum = compensated_sum(out.w);
  return out;
}

}  // namespace

Rational RationalSeries::at(int power) const {
  const int i = power - lowest_power;
  if (i < 0 || i >= static_cast<int>(coeffs.size())) return 0;
  return coeffs[static_cast<std::size_t>(i)];
}

ProbVector q_kk(double lambda, int k, std::size_t N) {
  KkWindow win = kk_window(lambda, k, N);
  for (double& x : win.w) x /= win.sum;
  return ProbVector(std::move(win.w), win.tail_w / win.sum, "q_kk");
}

std::size_t q_kk_required_length(double lambda, int k, double trunc_tol) {
  std::size_t N = 16;
  for (; N <= (std::size_t{1} << 20); N *= 2) {
    try {
      const KkWindow win = kk_window(lambda, k, N);
      if (win.tail_w / win.sum <= trunc_tol) break;
    } catch (const TruncationTooCoarse&) {
    }
  }
  if (N > (std::size_t{1} << 20)) throw TruncationTooCoarse("q_kk does not reach the tolerance");
  // Bisect down to the shortest adequate window.
  std::size_t lo = N / 2, hi = N;
  while (lo + 1 < hi) {
    const std::size_t mid = (lo + hi) / 2;
    bool ok = false;
    try {
      const KkWindow win = kk_window(lambda, k, mid);
      ok = win.tail_w / win.sum <= trunc_tol;
    } catch (const TruncationTooCoarse&) {
    }
    (ok ? hi : lo) = mid;
  }
  return hi;
}

RationalSeries c_kk_series(int k, std::size_t N) {
  require_k(k);
  const std::size_t len = N + 1;  // e_0 .. e_N, e_n = c_{n-1}
  std::vector<cpp_int> a(len);
  for (std::size_t n = 0; n < len; ++n) {
    const cpp_int b = binomial(static_cast<unsigned>(n + k), static_cast<unsigned>(k));
    a[n] = b * b;
  }
  // Multiply by (1 - lambda)^3, then divide by (1 + lambda).
  std::vector<cpp_int> b(len);
  for (std::size_t n = 0; n < len; ++n) {
    b[n] = a[n];
    if (n >= 1) b[n] -= 3 * a[n - 1];
    if (n >= 2) b[n] += 3 * a[n - 2];
    if (n >= 3) b[n] -= a[n - 3];
  }
  RationalSeries out;
  out.lowest_power = -1;
  out.coeffs.resize(len);
  cpp_int prev = 0;
  for (std::size_t n = 0; n < len; ++n) {
    prev = b[n] - prev;
    out.coeffs[n] = Rational(prev);
  }
  return out;
}

bool verify_kk_expansion(int k, std::size_t N) {
  const RationalSeries c = c_kk_series(k, N);
  for (std::size_t n = 0; n < N; ++n) {
    const cpp_int lhs_b = binomial(static_cast<unsigned>(n + k + 1), static_cast<unsigned>(k));
    const Rational lhs = Rational(lhs_b * lhs_b);
    Rational rhs = 0;
    for (std::size_t i = 0; i <= n + 1; ++i) {
      const int power = static_cast<int>(n) - static_cast<int>(i);
      rhs += c.at(power) * Rational((i + 1) * (i + 1));
    }
    if (lhs != rhs) return false;
  }
  return true;
}

ConjectureResult conjecture_scan(int k, std::size_t N) {
  const RationalSeries c = c_kk_series(k, N);
  ConjectureResult out;
  for (std::size_t n = 0; n < N; ++n) {
    if (c.at(static_cast<int>(n)) < 0) {
      out.all_nonneg = false;
      out.first_negative = n;
      break;
    }
  }
  return out;
}

namespace {

// N_11 / N_kk from the same window as q_kk, in double precision.
double norm_ratio(double lambda, const KkWindow& win) {
  const double n11 = (1.0 + lambda) / std::pow(1.0 - lambda, 3);
  return n11 / (std::exp(win.top) * (win.sum + win.tail_w));
}

}  // namespace

std::vector<double> d_kk_column(double lambda, int k, std::size_t N) {
  const KkWindow win = kk_window(lambda, k, N);
  const double scale = norm_ratio(lambda, win);
  const RationalSeries c = c_kk_series(k, N);
  std::vector<double> d(N);
  for (std::size_t j = 0; j < N; ++j) {
    const double cj = c.at(static_cast<int>(j) - 1).convert_to<double>();
    d[j] = scale * cj * std::pow(lambda, double(j));
  }
  return d;
}

bool verify_d_kk(double lambda, int k, std::size_t N) {
  if (k < 1) throw DomainError("verify_d_kk needs k >= 1");
  const KkWindow win = kk_window(lambda, k, N);
  const double n11 = (1.0 + lambda) / std::pow(1.0 - lambda, 3);
  // With c_n >= 0, c_n <= C(n+k+1,k)^2, so the omitted column mass is at
  // most N_11 times the omitted q^(kk) mass.
  const double d_tail = n11 * win.tail_w / (win.sum + win.tail_w);
  if (d_tail > 1e-11) throw TruncationTooCoarse("window too short to resolve the column of D");

  if (!conjecture_scan(k, N).all_nonneg) return false;
  const std::vector<double> d = d_kk_column(lambda, k, N);
  if (std::abs(compensated_sum(d) - 1.0) > 1e-10) return false;

  // q^(11) from its closed-form normalization, q^(kk) normalized like d.
  std::vector<double> q11(N), qkk(N);
  for (std::size_t n = 0; n < N; ++n) {
    const double nn = double(n);
    q11[n] = std::pow(lambda, nn) * (nn + 1.0) * (nn + 1.0) / n11;
    qkk[n] = win.w[n] / (win.sum + win.tail_w);
  }
  for (std::size_t i = 0; i < N; ++i) {
    CompensatedSum acc;
    for (std::size_t j = 0; j <= i; ++j) acc += d[i - j] * q11[j];
    if (std::abs(acc.value() - qkk[i]) > 1e-10) return false;
  }
  return true;
}

std::size_t d_kk_required_length(double lambda, int k) {
  const double n11 = (1.0 + lambda) / std::pow(1.0 - lambda, 3);
  return q_kk_required_length(lambda, k, 0.5 * 1e-11 / n11);
}

}  // namespace fockmaj
