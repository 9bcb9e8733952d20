#include "adelic/dimtheory.hpp"

#include <sstream>

namespace adelic {

namespace {

// u-valuation of the global uniformizer of C at one of its fixed flags; the
// toric twist entering every graded level. Computed by honest expansion and
// memoized.
long uniformizer_twist(const Surface& s, int cid, const SurfacePoint& pt) {
  thread_local std::map<std::string, long> cache;
  std::string key = s.name() + "|" + s.field.name() + "|" + std::to_string(cid) + "|" + pt.str();
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  FlagKey flag{SurfaceCurve::invariant(cid), pt};
  FlagData fd = flag_data(s, flag, 6);
  IterLaurent ex = curve_uniformizer(s, cid).eval(fd.x_of, fd.y_of, 4, 4);
  long h = ex.valuation2().second;
  cache.insert({key, h});
  return h;
}

CurveCohomology cohomology_cached(const FieldSpec& f, const CurveDivisor& d) {
  thread_local std::map<std::string, CurveCohomology> cache;
  std::string key = f.name() + "|" + d.str();
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  CurveCohomology c = curve_cohomology(f, d);
  cache.insert({key, c});
  return c;
}

long nu_offset_nested(const Surface& s, const SurfaceDivisor& lo, const SurfaceDivisor& up, bool reversed) {
  if (!lo.leq(up)) throw LatticeMismatch("nested offset expects lo <= up");
  std::vector<int> order;
  for (int cid = 0; cid < s.invariant_count(); ++cid) order.push_back(cid);
  if (reversed) std::reverse(order.begin(), order.end());
  long total = 0;
  SurfaceDivisor partial = lo;
  for (int cid : order) {
    SurfaceCurve c = SurfaceCurve::invariant(cid);
    long steps = up.at(c) - lo.at(c);
    for (long k = 0; k < steps; ++k) {
      partial.add(c, 1);
      CurveCohomology ch = cohomology_cached(s.field, level_divisor(s, cid, partial));
      total += ch.h0 - ch.h1;
    }
  }
  return total;
}

}  // namespace

CurveDivisor level_divisor(const Surface& s, int curve_id, const SurfaceDivisor& after) {
  if (!after.monomial()) throw NonMonomial("graded levels need monomial divisors");
  long j = -after.at_inv(curve_id);
  CurveDivisor e;
  for (const auto& pt : fixed_points_of(s, curve_id)) {
    FlagKey flag{SurfaceCurve::invariant(curve_id), pt};
    FlagData fd = flag_data(s, flag, 4);
    long coeff = fd.crossing ? after.at_inv(*fd.crossing) : 0;
    coeff += j * uniformizer_twist(s, curve_id, pt);
    e.add(fd.on_curve, coeff);
  }
  return e;
}

long nu_offset(const Surface& s, const SurfaceDivisor& lo, const SurfaceDivisor& up) {
  SurfaceDivisor m = SurfaceDivisor::componentwise_min(lo, up);
  return nu_offset_nested(s, m, up, false) - nu_offset_nested(s, m, lo, false);
}

long nu_offset_reversed(const Surface& s, const SurfaceDivisor& lo, const SurfaceDivisor& up) {
  SurfaceDivisor m = SurfaceDivisor::componentwise_min(lo, up);
  return nu_offset_nested(s, m, up, true) - nu_offset_nested(s, m, lo, true);
}

DimElement mu_element(const Surface& s, const LatticeDesc& e1, const LatticeDesc& e2) {
  (void)s;
  e1.require_monomial();
  e2.require_monomial();
  return DimElement{e1, e2, 0};
}

DimElement nu_element(const Surface& s, const LatticeDesc& e1, const LatticeDesc& e2) {
  e1.require_monomial();
  e2.require_monomial();
  return DimElement{e1, e2, nu_offset(s, e1.normalized(), e2.normalized())};
}

DimElement dim_compose(const Surface& s, const DimElement& d12, const DimElement& d23) {
  (void)s;
  if (!(d12.upper.normalized() == d23.lower.normalized()))
    throw LatticeMismatch("composition needs matching middle lattices");
  return DimElement{d12.lower, d23.upper, d12.offset + d23.offset};
}

DimElement dim_dual(const Surface& s, const DimElement& d, const CanonicalData& can) {
  (void)s;
  d.lower.require_monomial();
  d.upper.require_monomial();
  LatticeDesc lo = LatticeDesc::of(can.k_divisor - d.upper.normalized());
  LatticeDesc up = LatticeDesc::of(can.k_divisor - d.lower.normalized());
  return DimElement{lo, up, d.offset};
}

long nu_minus_mu(const Surface& s, const SurfaceDivisor& f, const SurfaceDivisor& g) {
  if (!f.monomial() || !g.monomial()) throw NonMonomial("nu/mu need monomial divisors");
  return nu_offset(s, f, g);
}

long delta_cocycle(const Surface& s, const SurfaceIdele& g, const SurfaceDivisor& lo,
                   const SurfaceDivisor& up) {
  if (!lo.monomial() || !up.monomial()) throw NonMonomial("cocycle lattices must be monomial");
  long total = 0;
  for (int cid = 0; cid < s.invariant_count(); ++cid) {
    long steps = up.at_inv(cid) - lo.at_inv(cid);
    if (steps == 0) continue;
    // per-point shift of the canonical reference under the idele action
    long dc = 0;
    std::set<SurfacePoint> pts;
    for (const auto& pt : fixed_points_of(s, cid)) pts.insert(pt);
    for (const auto& [flag, u] : g.units)
      if (flag.curve == SurfaceCurve::invariant(cid)) pts.insert(flag.point);
    for (const auto& pt : pts) {
      FlagKey flag{SurfaceCurve::invariant(cid), pt};
      FlagData fd = flag_data(s, flag, 4);
      long m_cross = 0;
      if (fd.crossing && g.monomial.count(*fd.crossing)) m_cross = g.monomial.at(*fd.crossing);
      dc += m_cross - g.flag_vu(flag);
    }
    total += steps * dc;
  }
  return total;
}

QuotientModel quotient_model(const Surface& s, const SurfaceDivisor& lo, const SurfaceDivisor& up) {
  if (!lo.leq(up)) throw LatticeMismatch("quotient model expects lo <= up");
  QuotientModel qm{lo, up, {}};
  SurfaceDivisor partial = lo;
  for (int cid = 0; cid < s.invariant_count(); ++cid) {
    SurfaceCurve c = SurfaceCurve::invariant(cid);
    long steps = up.at(c) - lo.at(c);
    for (long k = 0; k < steps; ++k) {
      partial.add(c, 1);
      CurveDivisor e = level_divisor(s, cid, partial);
      CurveCohomology ch = cohomology_cached(s.field, e);
      qm.pieces.push_back({cid, -partial.at(c), e, ch.h0, ch.h1});
    }
  }
  return qm;
}

std::string QuotientModel::dump(const Surface& s) const {
  std::ostringstream os;
  os << "quotient A12(" << upper.str(s) << ") / A12(" << lower.str(s) << ")\n";
  for (const auto& p : pieces) {
    os << "  " << s.curve_label(p.curve) << " t^" << p.level << "  E = " << p.e_divisor.str()
       << "  h0 = " << p.h0 << "  h1 = " << p.h1 << "\n";
  }
  return os.str();
}

long dual_pairing_value(const Surface& s, const DimElement& d, const DimElement& e,
                        const CanonicalData& can, long choice) {
  SurfaceDivisor L = d.lower.normalized(), U = d.upper.normalized();
  SurfaceDivisor Ld = e.lower.normalized(), Ud = e.upper.normalized();
  if (!L.leq(U)) throw LatticeMismatch("pairing expects a nested source pair");
  if (!(Ld == can.k_divisor - U) || !(Ud == can.k_divisor - L))
    throw LatticeMismatch("second element does not live over the dual lattice pair");

  // corner corrections: germs visible at both flags of a crossing point
  auto corner_count = [&](const SurfaceDivisor& lo, const SurfaceDivisor& up) {
    long n = 0;
    std::set<SurfacePoint> seen;
    for (int cid = 0; cid < s.invariant_count(); ++cid)
      for (const auto& pt : fixed_points_of(s, cid)) {
        if (seen.count(pt)) continue;
        seen.insert(pt);
        FlagKey flag{SurfaceCurve::invariant(cid), pt};
        FlagData fd = flag_data(s, flag, 4);
        if (!fd.crossing) continue;
        n += (up.at_inv(cid) - lo.at_inv(cid)) * (up.at_inv(*fd.crossing) - lo.at_inv(*fd.crossing));
      }
    return n;
  };

  long dz = d.offset - corner_count(L, U);
  long ezp = e.offset - corner_count(Ld, Ud);

  for (int cid = 0; cid < s.invariant_count(); ++cid) {
    for (const auto& pt : fixed_points_of(s, cid)) {
      FlagKey flag{SurfaceCurve::invariant(cid), pt};
      FlagData fd = flag_data(s, flag, 6);
      if (!fd.crossing) continue;
      TwoForm w = expand_two_form(s, can.omega, flag, 6);
      auto [s_val, r_val] = w.coefficient.valuation2();
      long beta_mu = -L.at_inv(*fd.crossing);
      long beta_z = beta_mu + choice;
      long beta_mu_dual = -Ld.at_inv(*fd.crossing);
      for (long j = -U.at_inv(cid); j <= -L.at_inv(cid) - 1; ++j) {
        long j_dual = -1 - s_val - j;
        if (j_dual < -Ud.at_inv(cid) || j_dual > -Ld.at_inv(cid) - 1)
          throw LatticeMismatch("level reflection left the dual window");
        long beta_zperp = -r_val - beta_z;
        dz += beta_mu - beta_z;
        ezp += beta_mu_dual - beta_zperp;
      }
    }
  }
  return dz + ezp;
}

}  // namespace adelic
