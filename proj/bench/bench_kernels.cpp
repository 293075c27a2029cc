// Serial reference vs OpenMP kernel timings. Each pair is checked for equal
// results before its timing is printed.

#include <omp.h>

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <functional>

#include "qfr/elliptic.hpp"
#include "qfr/hilbert.hpp"

using namespace qfr;

namespace {

double best_of(int reps, const std::function<void()>& fn) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const std::string& name, double serial, double parallel, bool same) {
  std::printf("%-34s %10.4f %10.4f %7.2fx  %s\n", name.c_str(), serial, parallel, serial / parallel,
              same ? "ok" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kernel benchmarks"};
  int reps = 3;
  app.add_option("--reps", reps, "repetitions, best time reported")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-34s %10s %10s %8s\n", "kernel", "serial s", "omp s", "speedup");
  bool all_same = true;

  for (const char* p : {"1000003", "9999991"}) {
    CurveFp c = make_curve(2, 3, Int(p));
    TraceData s, q;
    double ts = best_of(reps, [&] { s = count_points_serial(c); });
    double tp = best_of(reps, [&] { q = count_points_parallel(c); });
    all_same &= s.N == q.N;
    row(std::string("points y^2=x^3+2x+3 over F_") + p, ts, tp, s.N == q.N);
  }

  {
    const std::uint64_t p = 4999;  // 4999 = 2 mod 3, so t^2 + t + 1 is irreducible
    fp::Poly g{1, 1, 1};
    TraceData s, q;
    double ts = best_of(reps, [&] { s = count_points_fp2(p, g, {2, 1}, {3, 0}, true); });
    double tp = best_of(reps, [&] { q = count_points_fp2(p, g, {2, 1}, {3, 0}, false); });
    all_same &= s.N == q.N;
    row("points over F_{4999^2}", ts, tp, s.N == q.N);
  }

  for (long delta : {-907L, -3299L, -9887L}) {
    Discriminant d(delta);
    IntPolynomial s, q;
    double ts = best_of(reps, [&] { s = compute_class_poly(d, 0, false); });
    double tp = best_of(reps, [&] { q = compute_class_poly(d, 0, true); });
    all_same &= s == q;
    row("class polynomial delta=" + std::to_string(delta) + " (h=" + std::to_string(s.degree()) + ")", ts, tp,
        s == q);
  }
  return all_same ? 0 : 1;
}
