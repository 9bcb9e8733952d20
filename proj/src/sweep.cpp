#include "adelic/sweep.hpp"

#include <chrono>
#include <sstream>

#include "adelic/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace adelic {

std::vector<SurfaceDivisor> divisor_grid(const Surface& s, long range) {
  std::vector<SurfaceDivisor> out;
  std::vector<int> ids = s.divisor_curves();
  std::vector<long> c(ids.size(), -range);
  for (;;) {
    SurfaceDivisor d;
    for (std::size_t i = 0; i < ids.size(); ++i) d.add(SurfaceCurve::invariant(ids[i]), c[i]);
    out.push_back(d);
    std::size_t k = 0;
    while (k < c.size() && ++c[k] > range) c[k++] = -range;
    if (k == c.size()) break;
  }
  return out;
}

std::vector<VerifyReport> verify_sweep(const Surface& s, long range, RunMode mode) {
  std::vector<SurfaceDivisor> grid = divisor_grid(s, range);
  std::vector<VerifyReport> out(grid.size());
  if (mode == RunMode::parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long i = 0; i < static_cast<long>(grid.size()); ++i)
      out[static_cast<std::size_t>(i)] = verify_identities(s, grid[static_cast<std::size_t>(i)]);
  } else {
    for (std::size_t i = 0; i < grid.size(); ++i) out[i] = verify_identities(s, grid[i]);
  }
  return out;
}

IntersectGridResult intersect_grid(const Surface& s, long range, RunMode mode) {
  std::vector<SurfaceDivisor> grid = divisor_grid(s, range);
  const long n = static_cast<long>(grid.size());
  IntersectGridResult res;
  res.pairs = n * n;
  std::vector<int> ok(static_cast<std::size_t>(n * n), 0);
  std::vector<std::string> notes(static_cast<std::size_t>(n * n));

  auto work = [&](long idx) {
    long i = idx / n, j = idx % n;
    const SurfaceDivisor &a = grid[static_cast<std::size_t>(i)], &b = grid[static_cast<std::size_t>(j)];
    long oracle = classical_intersection(s, a, b);
    long pairing = intersection_via_pairing(s, a, b);
    long chains = intersection_via_dim_chains(s, a, b);
    if (pairing == oracle && chains == oracle) {
      ok[static_cast<std::size_t>(idx)] = 1;
    } else {
      std::ostringstream os;
      os << a.str(s) << " . " << b.str(s) << ": oracle " << oracle << " pairing " << pairing << " chains "
         << chains;
      notes[static_cast<std::size_t>(idx)] = os.str();
    }
  };

  if (mode == RunMode::parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long idx = 0; idx < n * n; ++idx) work(idx);
  } else {
    for (long idx = 0; idx < n * n; ++idx) work(idx);
  }
  for (long idx = 0; idx < n * n; ++idx) {
    if (ok[static_cast<std::size_t>(idx)])
      ++res.agreeing;
    else
      res.mismatches.push_back(notes[static_cast<std::size_t>(idx)]);
  }
  return res;
}

FormSpec random_reciprocity_form(const Surface& s, Rng& rng) {
  const FieldSpec& f = s.field;
  // a Laurent polynomial in x, y: poles only along the coordinate boundary
  BivarPoly num = BivarPoly::zero(f);
  long terms = rng.range(1, 4);
  for (long t = 0; t < terms; ++t)
    num.add_term(rng.range(-2, 2), rng.range(-2, 2), rng.scalar(f, 9));
  if (num.is_zero()) num = BivarPoly::constant(f, Scalar::one(f));
  BivarRational value{num, BivarPoly::constant(f, Scalar::one(f))};
  return FormSpec{value, {}, num.str()};
}

ReciprocityReport reciprocity_batch(const Surface& s, long samples, long seed, RunMode mode) {
  auto t0 = std::chrono::steady_clock::now();
  ReciprocityReport rep;
  rep.surface = s.name();
  rep.field = s.field.name();
  rep.seed = seed;
  rep.samples = samples;

  // pre-generate forms so the parallel path sees the same sequence
  std::vector<FormSpec> forms;
  {
    Rng rng(static_cast<std::uint64_t>(seed));
    for (long i = 0; i < samples; ++i) forms.push_back(random_reciprocity_form(s, rng));
  }

  std::vector<int> ok(static_cast<std::size_t>(samples), 0);
  std::vector<ReciprocitySample> fails(static_cast<std::size_t>(samples));

  auto work = [&](long i) {
    const FormSpec& form = forms[static_cast<std::size_t>(i)];
    bool good = true;
    ReciprocitySample fail;
    for (int cid = 0; cid < s.invariant_count() && good; ++cid) {
      Scalar sum = reciprocity_along_curve(s, form, SurfaceCurve::invariant(cid));
      if (!sum.is_zero()) {
        good = false;
        fail = {form.text, s.curve_label(cid), true, false};
      }
    }
    std::set<SurfacePoint> pts;
    for (const auto& flag : all_toric_flags(s)) pts.insert(flag.point);
    for (const auto& p : pts) {
      if (!good) break;
      Scalar sum = reciprocity_around_point(s, form, p);
      if (!sum.is_zero()) {
        good = false;
        fail = {form.text, p.str(), false, false};
      }
    }
    ok[static_cast<std::size_t>(i)] = good ? 1 : 0;
    if (!good) fails[static_cast<std::size_t>(i)] = fail;
  };

  if (mode == RunMode::parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long i = 0; i < samples; ++i) work(i);
  } else {
    for (long i = 0; i < samples; ++i) work(i);
  }
  for (long i = 0; i < samples; ++i) {
    if (ok[static_cast<std::size_t>(i)])
      ++rep.passed;
    else
      rep.failures.push_back(fails[static_cast<std::size_t>(i)]);
  }
  rep.elapsed_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace adelic
