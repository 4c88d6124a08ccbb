// Independent reference implementations used only by the tests. Nothing
// here calls into the library; each routine takes the slow, obvious route.
#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;

// Pascal's triangle, exact for n <= 62.
inline std::vector<std::vector<std::uint64_t>> pascal(int n_max) {
  std::vector<std::vector<std::uint64_t>> t(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    t[n].assign(n + 1, 1);
    for (int k = 1; k < n; ++k) t[n][k] = t[n - 1][k - 1] + t[n - 1][k];
  }
  return t;
}

// ln n! by direct summation of logs in long double.
inline long double log_factorial(int n) {
  long double s = 0.0L;
  for (int i = 2; i <= n; ++i) s += std::log(static_cast<long double>(i));
  return s;
}

inline long double log_binom(int n, int k) {
  if (k < 0 || k > n) return -std::numeric_limits<long double>::infinity();
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

inline long double log_sum_exp(const std::vector<long double>& xs) {
  long double m = -std::numeric_limits<long double>::infinity();
  for (auto x : xs) m = std::max(m, x);
  if (!std::isfinite(m)) return m;
  long double s = 0.0L;
  for (auto x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

// Sector populations counted by enumerating all 2^N basis states.
inline std::vector<std::uint64_t> sector_counts(int n) {
  std::vector<std::uint64_t> c(n + 1, 0);
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) ++c[std::popcount(i)];
  return c;
}

// p_A by enumerating every basis state with weight p(k)/count(k) and reading
// k_A off the high N_A bits.
inline std::vector<double> induced_by_enumeration(const std::vector<double>& p, int n, int n_a) {
  const auto counts = sector_counts(n);
  std::vector<long double> acc(n_a + 1, 0.0L);
  const int n_b = n - n_a;
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) {
    const int k = std::popcount(i);
    const int k_a = std::popcount(i >> n_b);
    acc[k_a] += static_cast<long double>(p[k]) / static_cast<long double>(counts[k]);
  }
  return {acc.begin(), acc.end()};
}

inline double kl_divergence(const std::vector<double>& p, const std::vector<double>& q) {
  long double s = 0.0L;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) s += p[i] * std::log(static_cast<long double>(p[i]) / q[i]);
  }
  return static_cast<double>(s);
}

// Unnormalized Gaussian weights at Q_k = k - N/2, normalized.
inline std::vector<double> gaussian_table(int n, double center, double width) {
  std::vector<double> w(n + 1);
  double s = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double q = k - 0.5 * n;
    w[k] = std::exp(-(q - center) * (q - center) / (2.0 * width * width));
    s += w[k];
  }
  for (auto& x : w) x /= s;
  return w;
}

// Exact mean entanglement entropy of a Haar state on C^m (x) C^n, m <= n:
// sum_{j=n+1}^{mn} 1/j - (m-1)/(2n).
inline double page_exact(std::uint64_t m, std::uint64_t n) {
  if (m > n) std::swap(m, n);
  long double s = 0.0L;
  for (std::uint64_t j = n + 1; j <= m * n; ++j) s += 1.0L / static_cast<long double>(j);
  return static_cast<double>(s - static_cast<long double>(m - 1) / (2.0L * n));
}

// Non-crossing set partitions of {0..r-1} with exactly k blocks, counted by
// enumerating restricted growth strings.
inline std::uint64_t noncrossing_partitions(int r, int k) {
  std::vector<int> a(r, 0);
  std::uint64_t count = 0;
  auto noncrossing = [&]() {
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j)
        for (int l = j + 1; l < r; ++l)
          for (int m = l + 1; m < r; ++m)
            if (a[i] == a[l] && a[j] == a[m] && a[i] != a[j]) return false;
    return true;
  };
  while (true) {
    const int blocks = *std::max_element(a.begin(), a.end()) + 1;
    if (blocks == k && noncrossing()) ++count;
    int i = r - 1;
    while (i > 0) {
      const int prefix_max = *std::max_element(a.begin(), a.begin() + i);
      if (a[i] <= prefix_max) break;
      --i;
    }
    if (i == 0) break;
    ++a[i];
    std::fill(a.begin() + i + 1, a.end(), 0);
  }
  return count;
}

// Catalan numbers from C_{n+1} = sum C_i C_{n-i}.
inline std::vector<std::uint64_t> catalan(int n_max) {
  std::vector<std::uint64_t> c(n_max + 1, 0);
  c[0] = 1;
  for (int n = 0; n < n_max; ++n)
    for (int i = 0; i <= n; ++i) c[n + 1] += c[i] * c[n - i];
  return c;
}

// rho_A by explicit partial trace; A = high N_A bits.
inline Eigen::MatrixXcd partial_trace(const std::vector<Complex>& psi, int n, int n_a) {
  const int n_b = n - n_a;
  const std::uint64_t da = std::uint64_t{1} << n_a;
  const std::uint64_t db = std::uint64_t{1} << n_b;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(da, da);
  for (std::uint64_t a = 0; a < da; ++a)
    for (std::uint64_t ap = 0; ap < da; ++ap)
      for (std::uint64_t b = 0; b < db; ++b)
        rho(a, ap) += psi[(a << n_b) | b] * std::conj(psi[(ap << n_b) | b]);
  return rho;
}

// Squared singular values of the D_A x D_B coefficient matrix.
inline std::vector<double> schmidt_by_svd(const std::vector<Complex>& psi, int n, int n_a) {
  const int n_b = n - n_a;
  const Eigen::Index da = Eigen::Index{1} << n_a;
  const Eigen::Index db = Eigen::Index{1} << n_b;
  Eigen::MatrixXcd m(da, db);
  for (Eigen::Index a = 0; a < da; ++a)
    for (Eigen::Index b = 0; b < db; ++b) m(a, b) = psi[(a << n_b) | b];
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  std::vector<double> out;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    out.push_back(svd.singularValues()(i) * svd.singularValues()(i));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline double shannon(const std::vector<double>& l) {
  double s = 0.0;
  for (double x : l)
    if (x > 1e-300) s -= x * std::log(x);
  return s;
}

}  // namespace oracle
