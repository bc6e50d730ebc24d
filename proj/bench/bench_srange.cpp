// Times the interpolant-backed studentized-range kernel against the plain
// nested-quadrature reference and reports the largest disagreement.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "quizgen/stats.hpp"

namespace {

struct Case {
  double q;
  int k;
  double df;
};

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(
             clock::now().time_since_epoch())
      .count();
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("openmp: %d thread(s)\n", omp_get_max_threads());
#else
  std::printf("openmp: disabled\n");
#endif

  std::vector<Case> cases;
  for (int k : {2, 3, 4, 6, 10})
    for (double df : {5.0, 20.0, 120.0, 765.0})
      for (double q : {1.0, 2.5, 3.6, 5.0}) cases.push_back({q, k, df});
  std::printf("cases: %zu\n", cases.size());

  double t0 = now_ms();
  std::vector<double> fast(cases.size());
  for (std::size_t i = 0; i < cases.size(); ++i)
    fast[i] = quizgen::srange_cdf(cases[i].q, cases[i].k, cases[i].df);
  double t1 = now_ms();

  std::vector<double> slow(cases.size());
  for (std::size_t i = 0; i < cases.size(); ++i)
    slow[i] =
        quizgen::reference::srange_cdf(cases[i].q, cases[i].k, cases[i].df);
  double t2 = now_ms();

  double max_abs = 0.0;
  std::size_t worst = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    double d = std::fabs(fast[i] - slow[i]);
    if (d > max_abs) {
      max_abs = d;
      worst = i;
    }
  }

  std::printf("production kernel: %9.2f ms (%.3f ms/call)\n", t1 - t0,
              (t1 - t0) / static_cast<double>(cases.size()));
  std::printf("reference kernel:  %9.2f ms (%.3f ms/call)\n", t2 - t1,
              (t2 - t1) / static_cast<double>(cases.size()));
  std::printf("speedup: %.2fx\n", (t2 - t1) / (t1 - t0));
  std::printf("max |diff| = %.3e at q=%.2f k=%d df=%.0f\n", max_abs,
              cases[worst].q, cases[worst].k, cases[worst].df);

  double tq0 = now_ms();
  double q95 = quizgen::srange_quantile(0.95, 4, 765.0);
  double tq1 = now_ms();
  std::printf("quantile(0.95, 4, 765) = %.6f in %.2f ms\n", q95, tq1 - tq0);
  return max_abs < 1e-7 ? 0 : 1;
}
