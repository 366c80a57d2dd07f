#include <doctest.h>

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "fockmaj/errors.hpp"
#include "fockmaj/filtration.hpp"
#include "fockmaj/majorization.hpp"
#include "fockmaj/random_ops.hpp"

using namespace fockmaj;

namespace {

// Explicit two-mode oracle: the state is the coefficient matrix C with
// |Psi> = sum C_ij |i>|j>; an operator X on mode 1 maps C -> X C and an
// operator Y on mode 2 maps C -> C Y^T. Schmidt coefficients are the squared
// singular values, normalized.
using Mat = Eigen::MatrixXd;

Mat ladder(int k, int D) {
  Mat m = Mat::Identity(D, D);
  for (int step = 0; step < std::abs(k); ++step) {
    Mat a = Mat::Zero(D, D);
    for (int n = 0; n + 1 < D; ++n) {
      if (k > 0) a(n + 1, n) = std::sqrt(double(n + 1));
      else a(n, n + 1) = std::sqrt(double(n + 1));
    }
    m = a * m;
  }
  return m;
}

std::vector<double> two_mode_spectrum(double lambda, const std::vector<int>& mode1,
                                      const std::vector<int>& mode2, int D) {
  Mat C = Mat::Zero(D, D);
  for (int n = 0; n < D; ++n) C(n, n) = std::sqrt((1 - lambda) * std::pow(lambda, n));
  for (int k : mode1) C = ladder(k, D) * C;
  for (int l : mode2) C = C * ladder(l, D).transpose();
  Eigen::JacobiSVD<Mat> svd(C);
  std::vector<double> s;
  double total = 0.0;
  for (int i = 0; i < svd.singularValues().size(); ++i) {
    s.push_back(svd.singularValues()(i) * svd.singularValues()(i));
    total += s.back();
  }
  for (double& x : s) x /= total;
  std::sort(s.rbegin(), s.rend());
  return s;
}

double max_diff(const ProbVector& p, const std::vector<double>& q, std::size_t n) {
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(p.at(i) - (i < q.size() ? q[i] : 0.0)));
  return worst;
}

double max_diff(const ProbVector& p, const ProbVector& q) {
  double worst = 0.0;
  for (std::size_t i = 0; i < std::max(p.size(), q.size()); ++i)
    worst = std::max(worst, std::abs(p.at(i) - q.at(i)));
  return worst;
}

}  // namespace

TEST_CASE("filtered spectra against closed forms") {
  const double lambda = 0.5;
  const ProbVector tau = thermal_eigenvalues(lambda, 1e-14);
  const ProbVector same = filtered_schmidt(lambda, identity_op(64), identity_op(64), 1e-14);
  CHECK(max_diff(same, tau) <= 1e-14);

  const auto c1 = make_standard(OpKind::Creation, {{"k", 1}}, 64);
  const ProbVector s1 = filtered_schmidt(lambda, c1, identity_op(64));
  CHECK(s1[0] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(s1[1] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(s1[2] == doctest::Approx(0.1875).epsilon(1e-12));

  const ProbVector s11 = filtered_fock_distribution(lambda, c1, c1);
  // sum lambda^n (n+1)^2 = (1+lambda)/(1-lambda)^3 = 12.
  CHECK(s11[0] == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
  for (std::size_t n = 0; n < 40; ++n)
    CHECK(s11[n] == doctest::Approx(std::pow(lambda, double(n)) * (n + 1.0) * (n + 1.0) / 12.0).epsilon(1e-11));
  CHECK(s11.tail_bound() <= 1e-12);
}

TEST_CASE("normalization constants") {
  CHECK(normalization_constant(0.5, identity_op(8), identity_op(8)) == doctest::Approx(1.0).epsilon(1e-14));
  const auto sub = make_standard(OpKind::KrausSub, {{"eta", 0.5}, {"k", 1}}, 64);
  CHECK(normalization_constant(0.5, sub, identity_op(64)) == doctest::Approx(1.0 / 9.0).epsilon(1e-13));
  const auto a1 = make_standard(OpKind::Annihilation, {{"k", 1}}, 64);
  CHECK(normalization_constant(0.3, a1, identity_op(64)) == doctest::Approx(0.3 / 0.7).epsilon(1e-13));
  // Single-photon Kraus addition: (g-1)/g * sum (1-l) l^n g^-n (n+1).
  const auto add = make_standard(OpKind::KrausAdd, {{"g", 1.7}, {"k", 1}}, 64);
  const double x = 0.4 / 1.7;
  CHECK(normalization_constant(0.4, add, identity_op(64)) ==
        doctest::Approx(0.7 / 1.7 * 0.6 / ((1 - x) * (1 - x))).epsilon(1e-12));
}

TEST_CASE("scheme spectra") {
  const double lambda = 0.4;
  CHECK(max_diff(scheme_spectrum(lambda, DualSingle{0, 0}), thermal_eigenvalues(lambda, 1e-12)) <= 1e-12);
  for (int k = -2; k <= 2; ++k) {
    for (int l = -2; l <= 2; ++l) {
      const ProbVector a = scheme_spectrum(lambda, DualSingle{k, l});
      const ProbVector b = scheme_spectrum(lambda, DualSingle{l, k});
      CHECK(compare(a, b, 1e-10) == MajorOrder::Equivalent);
    }
  }
  for (int k = 1; k <= 3; ++k) {
    const ProbVector a = scheme_spectrum(lambda, DualSingle{0, k});
    const ProbVector b = scheme_spectrum(lambda, SingleMulti{{-k}});
    CHECK(max_diff(a, b) <= 1e-14);
  }
}

TEST_CASE("reduction to a single mode") {
  const std::vector<int> k1{3}, l1{2};
  CHECK(reduce_to_single_mode(k1, l1) == std::vector<int>{-2, 3});
  CHECK(reduce_to_single_mode(k1, {}) == std::vector<int>{3});
  const std::vector<int> l12{1, -2};
  CHECK(reduce_to_single_mode({}, l12) == std::vector<int>{2, -1});
}

TEST_CASE("spectra agree with the explicit two-mode construction") {
  const double lambda = 0.5;
  const int D = 128;
  const std::vector<std::pair<std::vector<int>, std::vector<int>>> cases{
      {{1}, {}},        {{}, {1}},         {{2}, {-1}},
      {{}, {1, -2}},   {{}, {-2, 1}},    {{1, -1}, {2}},    {{-1}, {1, 1, -2}},
      {{2, -1, 1}, {-1, 2}},
  };
  for (const auto& [m1, m2] : cases) {
    const auto oracle = two_mode_spectrum(lambda, m1, m2, D);
    const ProbVector ours = scheme_spectrum(lambda, SingleMulti{reduce_to_single_mode(m1, m2)});
    CHECK(max_diff(ours, oracle, 60) <= 1e-10);
  }
  // General(f; g) with ladders on both modes matches too.
  const auto oracle = two_mode_spectrum(lambda, {2}, {-1}, D);
  CHECK(max_diff(scheme_spectrum(lambda, DualSingle{2, -1}), oracle, 60) <= 1e-10);
}

TEST_CASE("random reductions match the two-mode oracle") {
  Rng rng(2718);
  std::uniform_int_distribution<int> len(0, 3), entry(-2, 2);
  const double lambda = 0.5;
  int checked = 0;
  for (int i = 0; i < 40; ++i) {
    std::vector<int> m1(len(rng)), m2(len(rng));
    for (int& x : m1) x = entry(rng);
    for (int& x : m2) x = entry(rng);
    const auto kvec = reduce_to_single_mode(m1, m2);
    if (kvec.empty()) continue;
    ProbVector ours;
    try {
      ours = scheme_spectrum(lambda, SingleMulti{kvec});
    } catch (const ZeroState&) {
      continue;
    }
    CHECK(max_diff(ours, two_mode_spectrum(lambda, m1, m2, 128), 60) <= 1e-10);
    ++checked;
  }
  CHECK(checked > 20);
}

TEST_CASE("entanglement entropy") {
  CHECK(entropy_of_entanglement(0.5, DualSingle{0, 0}, 1e-15) == doctest::Approx(2 * std::log(2.0)).epsilon(1e-11));
  CHECK(entropy_of_entanglement(0.5, DualSingle{1, 1}) > entropy_of_entanglement(0.5, DualSingle{0, 0}));
  CHECK(entropy_of_entanglement(0.0, DualSingle{1, 1}) == 0.0);
}

TEST_CASE("state annihilated by the filtration") {
  CHECK_THROWS_AS(scheme_spectrum(0.0, SingleMulti{{-1}}), ZeroState);
  CHECK_THROWS_AS(scheme_spectrum(0.0, SingleMulti{{-1, 1, -1}}), ZeroState);
  const std::vector<double> zero{0.0, 0.0};
  CHECK_THROWS_AS(filtered_schmidt(0.5, FilterOp::custom(zero), identity_op(8)), ZeroState);
}

TEST_CASE("non-decaying spectra are refused") {
  const auto nla = make_standard(OpKind::Nla, {{"g", 3.0}}, 64);
  CHECK_THROWS_AS(filtered_schmidt(0.5, nla, identity_op(64)), TruncationTooCoarse);
  const auto mild = make_standard(OpKind::Nla, {{"g", 1.5}}, 64);
  CHECK_NOTHROW(filtered_schmidt(0.4, mild, identity_op(64)));
}

TEST_CASE("adaptive window honours the tolerance") {
  for (double tol : {1e-8, 1e-12, 1e-14}) {
    const auto c3 = make_standard(OpKind::Creation, {{"k", 3}}, 64);
    const ProbVector s = filtered_fock_distribution(0.9, c3, c3, tol);
    CHECK(s.tail_bound() <= tol);
    // Brute force: the true omitted mass past the window.
    double kept = 0.0, omitted = 0.0;
    for (std::size_t n = 0; n < 20000; ++n) {
      const double w = std::exp(n * std::log(0.9) + 2 * (std::lgamma(n + 4.0) - std::lgamma(n + 1.0)));
      (n < s.size() ? kept : omitted) += w;
    }
    CHECK(omitted / kept <= s.tail_bound() * (1 + 1e-9));
  }
}

TEST_CASE("random jointly amplifying pairs are majorized") {
  Rng rng(31337);
  for (int i = 0; i < 50; ++i) {
    const auto [f, g] = random_jointly_amplifying_pair(rng, 64);
    CHECK(jointly_fock_amplifying(f, g, 64));
    for (int j = 1; j <= 9; ++j) {
      const double lambda = 0.1 * j;
      CHECK(majorizes(thermal_eigenvalues(lambda, 1e-13), filtered_schmidt(lambda, f, g), 1e-10));
    }
  }
}

TEST_CASE("dual addition and subtraction are equivalent") {
  for (int k = 1; k <= 3; ++k) {
    for (int j = 1; j <= 9; ++j) {
      const double lambda = 0.1 * j;
      CHECK(compare(scheme_spectrum(lambda, DualSingle{k, k}), scheme_spectrum(lambda, DualSingle{-k, -k}),
                    1e-10) == MajorOrder::Equivalent);
    }
  }
}

TEST_CASE("concatenated ladders always enhance") {
  Rng rng(777);
  int done = 0;
  while (done < 100) {
    const auto kvec = random_kvec(rng, 4, 3);
    const double lambda = 0.1 * double(1 + done % 9);
    ProbVector sigma;
    try {
      sigma = scheme_spectrum(lambda, SingleMulti{kvec});
    } catch (const ZeroState&) {
      continue;
    }
    CHECK(majorizes(thermal_eigenvalues(lambda, 1e-13), sigma, 1e-10));
    ++done;
  }
}

TEST_CASE("scheme text form") {
  CHECK(to_string(parse_scheme("dual(8,8)")) == "dual(8,8)");
  CHECK(to_string(parse_scheme(" multi( -1, +2 ,3) ")) == "multi(-1,2,3)");
  CHECK(to_string(parse_scheme("general(kraus-add(g=1.5,k=1);identity)")) ==
        "general(kraus-add(g=1.5,k=1);nla(g=1))");
  CHECK_THROWS_AS(parse_scheme("dual(1)"), ParseError);
  CHECK_THROWS_AS(parse_scheme("multi(1,x)"), ParseError);
  CHECK_THROWS_AS(parse_scheme("triple(1,2,3)"), ParseError);
  CHECK_THROWS_AS(parse_scheme("general(creation(k=1))"), ParseError);
  try {
    parse_scheme("general(creation(k=1);warp)");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 22);
  }
}
