#include "fockmaj/random_ops.hpp"

#include <algorithm>
#include <numeric>

namespace fockmaj {

namespace {

double uniform(Rng& rng, double a, double b) {
  return std::uniform_real_distribution<double>(a, b)(rng);
}

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// Amplitudes on [0, N): zero on a random leading block when amplifying, else
// zero on a random scattering of entries; entry 0..N-1 otherwise positive.
std::vector<double> random_amplitudes(Rng& rng, std::size_t N, const RandomOpOptions& opt) {
  std::vector<double> a(N, 0.0);
  if (opt.amplifying) {
    const std::size_t lead = pick(rng, 0, static_cast<std::size_t>(opt.zero_fraction * N));
    double x = uniform(rng, 0.1, 1.0);
    for (std::size_t n = lead; n < N; ++n) {
      a[n] = x;
      // Occasional exact ties exercise the non-strict inequality.
      if (uniform(rng, 0.0, 1.0) > 0.1) x *= uniform(rng, 1.0, 1.15);
    }
  } else {
    for (auto& x : a) x = uniform(rng, 0.0, 1.0) < opt.zero_fraction ? 0.0 : uniform(rng, 0.1, 2.0);
  }
  return a;
}

}  // namespace

FilterOp random_fock_preserving(Rng& rng, std::size_t N, RandomOpOptions opt) {
  const auto a = random_amplitudes(rng, N, opt);
  std::vector<FockTarget> targets(N);
  std::size_t t = pick(rng, 0, 3);
  for (std::size_t n = 0; n < N; ++n) {
    if (a[n] == 0.0) continue;
    targets[n] = t;
    t += opt.injective ? pick(rng, 1, 2) : pick(rng, 0, 1);
  }
  return FilterOp::custom(a, std::move(targets));
}

FilterOp random_fock_orthogonal(Rng& rng, std::size_t N, RandomOpOptions opt) {
  const auto a = random_amplitudes(rng, N, opt);
  std::vector<std::size_t> pool(2 * N);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  std::shuffle(pool.begin(), pool.end(), rng);
  std::vector<FockTarget> targets(N);
  for (std::size_t n = 0; n < N; ++n)
    if (a[n] != 0.0) targets[n] = pool[n];
  return FilterOp::custom(a, std::move(targets));
}

FilterOp random_amplifying(Rng& rng, std::size_t N) {
  RandomOpOptions opt;
  opt.amplifying = true;
  return FilterOp::custom(random_amplitudes(rng, N, opt));
}

std::pair<FilterOp, FilterOp> random_jointly_amplifying_pair(Rng& rng, std::size_t N) {
  RandomOpOptions opt;
  opt.amplifying = true;
  const auto prod = random_amplitudes(rng, N, opt);
  std::vector<double> fa(N), ga(N);
  for (std::size_t n = 0; n < N; ++n) {
    if (prod[n] == 0.0) continue;
    fa[n] = uniform(rng, 0.2, 5.0);
    ga[n] = prod[n] / fa[n];
  }
  std::vector<std::size_t> pf(2 * N), pg(2 * N);
  std::iota(pf.begin(), pf.end(), std::size_t{0});
  std::iota(pg.begin(), pg.end(), std::size_t{0});
  std::shuffle(pf.begin(), pf.end(), rng);
  std::shuffle(pg.begin(), pg.end(), rng);
  std::vector<FockTarget> tf(N), tg(N);
  for (std::size_t n = 0; n < N; ++n) {
    if (prod[n] == 0.0) continue;
    tf[n] = pf[n];
    tg[n] = pg[n];
  }
  // The continuation past the window starts above the last target.
  tf[N - 1] = 2 * N;
  tg[N - 1] = 2 * N;
  return {FilterOp::custom_extended(fa, std::move(tf)),
          FilterOp::custom_extended(ga, std::move(tg))};
}

FilterOp random_standard_amplifying(Rng& rng, std::size_t length) {
  const double k = double(pick(rng, 1, 3));
  switch (pick(rng, 0, 3)) {
    case 0: return make_standard(OpKind::Creation, {{"k", k}}, length);
    case 1: return make_standard(OpKind::Annihilation, {{"k", k}}, length);
    case 2: return make_standard(OpKind::PhotonNumber, {}, length);
    default: return make_standard(OpKind::Nla, {{"g", uniform(rng, 1.0, 1.05)}}, length);
  }
}

std::vector<int> random_kvec(Rng& rng, std::size_t max_len, int max_abs) {
  std::vector<int> kvec(pick(rng, 1, max_len));
  std::uniform_int_distribution<int> entry(-max_abs, max_abs);
  for (int& k : kvec) k = entry(rng);
  return kvec;
}

}  // namespace fockmaj
