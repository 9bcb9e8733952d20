// Benchmark comparing the serial reference sweeps with the OpenMP kernels.
// Results must agree exactly; the table reports wall times and speedups.

#include <chrono>
#include <cstdio>
#include <string>

#include "adelic/sweep.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace adelic;

namespace {

template <typename F>
double time_ms(F&& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

void row(const std::string& name, double serial, double parallel, bool equal) {
  std::printf("%-28s %10.1f ms %10.1f ms   x%.2f   %s\n", name.c_str(), serial, parallel,
              parallel > 0 ? serial / parallel : 0.0, equal ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  long range = argc > 1 ? std::stol(argv[1]) : 2;
  long samples = argc > 2 ? std::stol(argv[2]) : 40;

#ifdef _OPENMP
  std::printf("openmp enabled, max threads %d\n", omp_get_max_threads());
#else
  std::printf("openmp not available; both columns run serially\n");
#endif
  std::printf("verify range %ld, reciprocity samples %ld\n\n", range, samples);
  std::printf("%-28s %13s %13s\n", "kernel", "serial", "parallel");

  for (auto kind : {SurfaceKind::p2, SurfaceKind::p1xp1}) {
    Surface s{kind, FieldSpec::fp(101)};

    std::vector<VerifyReport> vs, vp;
    double ts = time_ms([&] { vs = verify_sweep(s, range, RunMode::serial); });
    double tp = time_ms([&] { vp = verify_sweep(s, range, RunMode::parallel); });
    bool same = vs.size() == vp.size();
    for (std::size_t i = 0; same && i < vs.size(); ++i)
      same = vs[i].divisor == vp[i].divisor && vs[i].f == vp[i].f && vs[i].pass == vp[i].pass;
    row("verify_sweep " + s.name(), ts, tp, same);

    IntersectGridResult is, ip;
    ts = time_ms([&] { is = intersect_grid(s, range, RunMode::serial); });
    tp = time_ms([&] { ip = intersect_grid(s, range, RunMode::parallel); });
    row("intersect_grid " + s.name(), ts, tp,
        is.pairs == ip.pairs && is.agreeing == ip.agreeing);

    ReciprocityReport rs, rp;
    ts = time_ms([&] { rs = reciprocity_batch(s, samples, 7, RunMode::serial); });
    tp = time_ms([&] { rp = reciprocity_batch(s, samples, 7, RunMode::parallel); });
    row("reciprocity_batch " + s.name(), ts, tp, rs.passed == rp.passed && rs.samples == rp.samples);
  }
  return 0;
}
