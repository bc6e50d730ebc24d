#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "quizgen/error.hpp"
#include "quizgen/stats.hpp"

// Studentized range distribution.
//
//   P(Q <= q; k, nu) = INT_0^inf f_nu(s) * R_k(q*s) ds
//
// where f_nu is the density of chi_nu/sqrt(nu) and
//
//   R_k(x) = k * INT phi(u) * (Phi(u+x) - Phi(u))^(k-1) du
//
// is the CDF of the range of k standard normals. Both integrals use adaptive
// composite 16-point Gauss-Legendre with panel doubling. The production CDF
// caches R_k in a Chebyshev interpolant built once per call (R_k is entire in
// x, so a few dozen nodes reach ~1e-12 and the outer integral then costs
// almost nothing per node); quizgen::reference keeps the direct nested
// quadrature for cross-checks and the benchmark.

namespace quizgen {
namespace {

constexpr double kInnerTol = 1e-10;
constexpr double kOuterTol = 1e-9;
constexpr double kInterpTol = 1e-10;
constexpr double kQuantileTol = 1e-8;
constexpr double kInfiniteDf = 1e4;  // above this the chi integral is dropped

// 16-point Gauss-Legendre abscissae/weights on [-1,1] (symmetric halves).
constexpr int kGlN = 8;
constexpr double kGlX[kGlN] = {
    0.0950125098376374401853193, 0.2816035507792589132304605,
    0.4580167776572273863424194, 0.6178762444026437484466718,
    0.7554044083550030338951012, 0.8656312023878317438804679,
    0.9445750230732325760779884, 0.9894009349916499325961542,
};
constexpr double kGlW[kGlN] = {
    0.1894506104550684962853967, 0.1826034150449235888667637,
    0.1691565193950025381893121, 0.1495959888165767320815017,
    0.1246289712555338720524763, 0.0951585116824927848099251,
    0.0622535239386478928628438, 0.0271524594117540948517806,
};

double norm_pdf(double u) {
  return std::exp(-0.5 * u * u) * 0.3989422804014326779399461;
}

double norm_cdf(double u) { return 0.5 * std::erfc(-u * 0.7071067811865475244008444); }

template <typename F>
double composite_gl(double a, double b, int panels, F&& f) {
  const double h = (b - a) / panels;
  double sum = 0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    const double half = 0.5 * h;
    for (int i = 0; i < kGlN; ++i)
      sum += kGlW[i] * (f(mid + half * kGlX[i]) + f(mid - half * kGlX[i]));
  }
  return sum * 0.5 * h;
}

template <typename F>
double adaptive_gl(double a, double b, double tol, int start_panels, F&& f,
                   const char* what) {
  double prev = composite_gl(a, b, start_panels, f);
  for (int panels = start_panels * 2; panels <= 4096; panels *= 2) {
    double cur = composite_gl(a, b, panels, f);
    if (std::abs(cur - prev) < tol) return cur;
    prev = cur;
  }
  raise(ErrorKind::ConvergenceFailure,
        std::string(what) + ": quadrature did not reach tolerance");
}

// CDF of the range of k standard normals, by direct quadrature. The normal
// density is negligible outside [-12,12] (tail mass ~1e-33).
double range_cdf_direct(double x, int k) {
  if (x <= 0) return 0;
  const double km1 = k - 1;
  auto f = [&](double u) {
    const double d = norm_cdf(u + x) - norm_cdf(u);
    return norm_pdf(u) * std::pow(d, km1);
  };
  double value = k * adaptive_gl(-12.0, 12.0, kInnerTol, 4, f, "range CDF");
  return std::clamp(value, 0.0, 1.0);
}

// log density of chi_nu / sqrt(nu) at s > 0.
double log_scaled_chi_pdf(double s, double nu) {
  const double lt = nu == 1.0 ? 0.0 : (nu - 1.0) * std::log(s);
  return 0.5 * nu * std::log(nu) - std::lgamma(0.5 * nu) -
         (0.5 * nu - 1.0) * std::log(2.0) + lt - 0.5 * nu * s * s;
}

// Support [lo,hi] outside which the scaled-chi log density drops 46 nats
// below its mode (relative tail mass ~1e-20).
void scaled_chi_support(double nu, double& lo, double& hi) {
  const double mode = std::sqrt(std::max(nu - 1.0, 0.0) / nu);
  const double ref =
      log_scaled_chi_pdf(mode > 0 ? mode : 0.25 / std::sqrt(nu), nu);
  const double floor_log = ref - 46.0;
  double t = 1.0 / std::sqrt(nu);
  hi = mode + t;
  for (int i = 0; i < 400 && log_scaled_chi_pdf(hi, nu) > floor_log; ++i) {
    t *= 1.25;
    hi = mode + t;
  }
  lo = 0;
  if (mode == 0) return;
  t = 1.0 / std::sqrt(nu);
  lo = std::max(mode - t, 0.0);
  for (int i = 0; i < 400 && lo > 0 && log_scaled_chi_pdf(lo, nu) > floor_log; ++i) {
    t *= 1.25;
    lo = std::max(mode - t, 0.0);
  }
}

double chebyshev_node(double a, double b, int j, int n) {
  return 0.5 * (a + b) + 0.5 * (b - a) * std::cos(j * M_PI / n);
}

// Barycentric evaluation on Chebyshev-Lobatto nodes: weights (-1)^j, halved
// at the endpoints.
double barycentric(double a, double b, const std::vector<double>& values, double x) {
  const int n = static_cast<int>(values.size()) - 1;
  double num = 0, den = 0;
  for (int j = 0; j <= n; ++j) {
    const double diff = x - chebyshev_node(a, b, j, n);
    if (diff == 0) return values[j];
    double w = (j % 2 == 0) ? 1.0 : -1.0;
    if (j == 0 || j == n) w *= 0.5;
    const double t = w / diff;
    num += t * values[j];
    den += t;
  }
  return num / den;
}

// Chebyshev cache of x -> range_cdf_direct(x,k) on [a,b]. Node count doubles
// (reusing existing evaluations; this loop carries the expensive inner
// integrals and is the parallel kernel) until the coarse interpolant matches
// the new nodes.
class RangeInterpolant {
public:
  RangeInterpolant(int k, double a, double b) : a_(a), b_(b) {
    int n = 32;
    values_.resize(n + 1);
#pragma omp parallel for schedule(dynamic)
    for (int j = 0; j <= n; ++j)
      values_[j] = range_cdf_direct(chebyshev_node(a_, b_, j, n), k);
    for (;;) {
      const int n2 = 2 * n;
      std::vector<double> fine(n2 + 1);
      for (int j = 0; j <= n2; j += 2) fine[j] = values_[j / 2];
#pragma omp parallel for schedule(dynamic)
      for (int j = 1; j < n2; j += 2)
        fine[j] = range_cdf_direct(chebyshev_node(a_, b_, j, n2), k);
      double worst = 0;
      for (int j = 1; j < n2; j += 2)
        worst = std::max(worst, std::abs(barycentric(a_, b_, values_, chebyshev_node(a_, b_, j, n2)) - fine[j]));
      values_ = std::move(fine);
      if (worst < kInterpTol) return;
      n = n2;
      if (n >= 512)
        raise(ErrorKind::ConvergenceFailure,
              "range CDF interpolant did not converge");
    }
  }

  double operator()(double x) const { return barycentric(a_, b_, values_, x); }

private:
  double a_, b_;
  std::vector<double> values_;
};

// Finite-df outer integral with a pluggable inner evaluator.
template <typename Eval>
double cdf_finite(double q, double nu, double lo, double hi, Eval&& range_eval) {
  auto f = [&](double s) {
    return std::exp(log_scaled_chi_pdf(s, nu)) * range_eval(q * s);
  };
  double value = adaptive_gl(lo, hi, kOuterTol, 8, f, "studentized range CDF");
  return std::clamp(value, 0.0, 1.0);
}

void check_args(int k, double df) {
  if (k < 2) raise(ErrorKind::RangeError, "k must be at least 2");
  if (!(df > 0)) raise(ErrorKind::RangeError, "df must be positive");
}

bool effectively_infinite(double df) {
  return std::isinf(df) || df > kInfiniteDf;
}

template <typename Cdf>
double quantile_by_bisection(double p, Cdf&& cdf) {
  double lo = 0, hi = 4;
  int guard = 0;
  while (cdf(hi) < p) {
    lo = hi;
    hi *= 2;
    if (++guard > 9)
      raise(ErrorKind::ConvergenceFailure, "quantile bracket did not close");
  }
  while (hi - lo > kQuantileTol) {
    const double mid = 0.5 * (lo + hi);
    if (cdf(mid) < p) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double srange_cdf(double q, int k, double df) {
  check_args(k, df);
  if (q <= 0) return 0;
  if (effectively_infinite(df)) return range_cdf_direct(q, k);
  double lo, hi;
  scaled_chi_support(df, lo, hi);
  RangeInterpolant range(k, q * lo, q * hi);
  return cdf_finite(q, df, lo, hi, range);
}

double srange_quantile(double p, int k, double df) {
  check_args(k, df);
  if (!(p > 0 && p < 1)) raise(ErrorKind::RangeError, "p must be in (0,1)");

  if (effectively_infinite(df))
    return quantile_by_bisection(p, [&](double q) { return range_cdf_direct(q, k); });

  double lo, hi;
  scaled_chi_support(df, lo, hi);
  // One interpolant serves every bisection step; it is rebuilt only if the
  // bracket outgrows its domain.
  std::optional<RangeInterpolant> range;
  double domain_max = 0;
  auto cdf = [&](double q) {
    const double need = q * hi;
    if (!range || need > domain_max) {
      domain_max = std::max(2 * need, 8 * hi);
      range.emplace(k, 0.0, domain_max);
    }
    return cdf_finite(q, df, lo, hi, *range);
  };
  return quantile_by_bisection(p, cdf);
}

namespace reference {

double srange_cdf(double q, int k, double df) {
  check_args(k, df);
  if (q <= 0) return 0;
  if (effectively_infinite(df)) return range_cdf_direct(q, k);
  double lo, hi;
  scaled_chi_support(df, lo, hi);
  return cdf_finite(q, df, lo, hi,
                    [&](double x) { return range_cdf_direct(x, k); });
}

}  // namespace reference
}  // namespace quizgen
