#include "adelic/ideles.hpp"

#include <set>
#include <sstream>

namespace adelic {

namespace {

constexpr long kUnitOrder = 12;  // default certified span for constructed units

IterLaurent uniformizer_power_at(const Surface& s, int curve_id, long m, const FlagKey& flag, long order) {
  if (m == 0) return IterLaurent::one(s.field);
  FlagData fd = flag_data(s, flag, order + 4);
  return curve_uniformizer(s, curve_id).pow(m).eval(fd.x_of, fd.y_of, order, order);
}

}  // namespace

SurfaceIdele SurfaceIdele::one(const Surface& s) {
  return SurfaceIdele{s, {}, {}, kTagA12 | kTagA01 | kTagA02 | kTagRational};
}

SurfaceIdele SurfaceIdele::curvewise_equation(const Surface& s, const SurfaceDivisor& d) {
  if (!d.monomial()) throw NonMonomial("curvewise equation idele needs a monomial divisor");
  SurfaceIdele g = one(s);
  g.tags = kTagA01;
  for (const auto& [c, m] : d.coeffs)
    if (m != 0) g.monomial[c.inv] = m;
  if (g.monomial.empty()) g.tags |= kTagA12 | kTagA02 | kTagRational;
  return g;
}

SurfaceIdele SurfaceIdele::pointwise_equation(const Surface& s, const SurfaceDivisor& d, long order) {
  if (!d.monomial()) throw NonMonomial("pointwise equation idele needs a monomial divisor");
  const FieldSpec& f = s.field;
  SurfaceIdele g = one(s);
  g.tags = kTagA02;
  for (const auto& [c, m] : d.coeffs)
    if (m != 0) g.monomial[c.inv] = m;
  if (g.monomial.empty()) {
    g.tags |= kTagA12 | kTagA01 | kTagRational;
    return g;
  }
  // the germ at a fixed point is z_C^{a_C} z_{C'}^{a_{C'}}; stored units make
  // every flag component match the germ expansion u^{a_{C'}} t^{a_C}
  for (const auto& flag : all_toric_flags(s)) {
    FlagData fd = flag_data(s, flag, 4);
    long a_own = d.at_inv(flag.curve.inv);
    long a_cross = fd.crossing ? d.at_inv(*fd.crossing) : 0;
    IterLaurent desired = IterLaurent::monomial(f, a_cross, a_own, Scalar::one(f));
    IterLaurent base = uniformizer_power_at(s, flag.curve.inv, a_own, flag, order);
    IterLaurent unit = desired * base.invert(order, order);
    if (!unit.is_one()) g.units.insert({flag, unit});
  }
  return g;
}

SurfaceIdele SurfaceIdele::rational_function(const Surface& s, const BivarRational& r, long order) {
  if (r.num.is_zero()) throw ZeroDenominator("the zero function is not an idele");
  SurfaceIdele g = one(s);
  g.tags = kTagA01 | kTagA02 | kTagRational;
  // v_C(r) from the expansion at one flag of each curve
  for (int cid = 0; cid < s.invariant_count(); ++cid) {
    FlagKey flag{SurfaceCurve::invariant(cid), fixed_points_of(s, cid)[0]};
    IterLaurent ex = r.eval(flag_data(s, flag, order + 6).x_of, flag_data(s, flag, order + 6).y_of, order + 4,
                            order + 4);
    long v = ex.valuation2().first;
    if (v != 0) g.monomial[cid] = v;
  }
  bool any_mono = !g.monomial.empty();
  for (const auto& flag : all_toric_flags(s)) {
    FlagData fd = flag_data(s, flag, order + 6);
    IterLaurent desired = r.eval(fd.x_of, fd.y_of, order + 4, order + 4);
    long m = g.monomial.count(flag.curve.inv) ? g.monomial.at(flag.curve.inv) : 0;
    IterLaurent base = uniformizer_power_at(s, flag.curve.inv, m, flag, order + 4);
    IterLaurent unit = desired * base.invert(order + 4, order + 4);
    if (!unit.is_one()) g.units.insert({flag, unit});
  }
  if (any_mono) g.tags &= ~kTagA12;
  else
    g.tags |= kTagA12;
  return g;
}

SurfaceIdele SurfaceIdele::curve_unit(const Surface& s, int curve_id, const BivarRational& w, long order) {
  SurfaceIdele g = one(s);
  g.tags = kTagA01;
  for (const auto& p : fixed_points_of(s, curve_id)) {
    FlagKey flag{SurfaceCurve::invariant(curve_id), p};
    FlagData fd = flag_data(s, flag, order + 6);
    IterLaurent unit = w.eval(fd.x_of, fd.y_of, order + 4, order + 4);
    if (unit.valuation2().first != 0)
      throw SubgroupMismatch("curve unit has nonzero valuation along the curve");
    if (!unit.is_one()) g.units.insert({flag, unit});
  }
  // an O_{K_C}-unit is also integral at every flag, hence an A12 element too
  g.tags |= kTagA12;
  return g;
}

SurfaceIdele SurfaceIdele::point_unit(const Surface& s, const SurfacePoint& p, const BivarPoly& g0) {
  const FieldSpec& f = s.field;
  if (g0.eval_point(Scalar::zero(f), Scalar::zero(f)).is_zero())
    throw SubgroupMismatch("point unit must have a nonzero constant term");
  SurfaceIdele g = one(s);
  g.tags = kTagA02 | kTagA12;
  // the two flags at the point; germ variables ordered by curve id
  std::vector<FlagKey> here;
  for (const auto& flag : all_toric_flags(s))
    if (flag.point == p) here.push_back(flag);
  if (here.size() != 2) throw UnsupportedFlag("point units are supported at torus-fixed points only");
  int c0 = std::min(here[0].curve.inv, here[1].curve.inv);
  for (const auto& flag : here) {
    // germ variable z_{c0} is t on its own curve's flag and u on the other
    IterLaurent z_first = flag.curve.inv == c0 ? IterLaurent::monomial(f, 0, 1, Scalar::one(f))
                                               : IterLaurent::monomial(f, 1, 0, Scalar::one(f));
    IterLaurent z_second = flag.curve.inv == c0 ? IterLaurent::monomial(f, 1, 0, Scalar::one(f))
                                                : IterLaurent::monomial(f, 0, 1, Scalar::one(f));
    IterLaurent unit = g0.eval(z_first, z_second, Window::kInf, Window::kInf);
    if (!unit.is_one()) g.units.insert({flag, unit});
  }
  return g;
}

SurfaceIdele SurfaceIdele::a12_unit(const Surface& s, std::map<FlagKey, IterLaurent> parts) {
  SurfaceIdele g = one(s);
  g.tags = kTagA12;
  for (auto& [flag, u] : parts) {
    if (u.valuation2().first != 0) throw SubgroupMismatch("A12 unit must have zero t-valuation");
    if (!u.is_one()) g.units.insert({flag, u});
  }
  return g;
}

SurfaceIdele SurfaceIdele::operator*(const SurfaceIdele& o) const {
  if (!(surf == o.surf)) throw FieldMismatch("ideles on different surfaces");
  SurfaceIdele r = *this;
  r.tags = tags & o.tags;
  for (const auto& [c, m] : o.monomial) {
    r.monomial[c] += m;
    if (r.monomial[c] == 0) r.monomial.erase(c);
  }
  for (const auto& [flag, u] : o.units) {
    auto it = r.units.find(flag);
    if (it == r.units.end()) {
      r.units.insert({flag, u});
    } else {
      IterLaurent prod = it->second * u;
      if (prod.is_one())
        r.units.erase(it);
      else
        it->second = prod;
    }
  }
  return r;
}

SurfaceIdele SurfaceIdele::inverse() const {
  SurfaceIdele r = *this;
  for (auto& [c, m] : r.monomial) m = -m;
  for (auto& [flag, u] : r.units) u = u.invert();
  return r;
}

SurfaceDivisor SurfaceIdele::divisor() const {
  SurfaceDivisor d;
  for (const auto& [c, m] : monomial) d.add(SurfaceCurve::invariant(c), m);
  return d;
}

bool SurfaceIdele::is_identity_certified() const {
  if (!monomial.empty()) return false;
  for (const auto& [flag, u] : units) {
    IterLaurent diff = u - IterLaurent::one(surf.field);
    if (diff.is_unit()) return false;  // a certified nonzero coefficient survives
  }
  return true;
}

IterLaurent SurfaceIdele::flag_factor(const FlagKey& flag, long order) const {
  long m = 0;
  if (flag.curve.is_invariant() && monomial.count(flag.curve.inv)) m = monomial.at(flag.curve.inv);
  IterLaurent f = uniformizer_power_at(surf, flag.curve.is_invariant() ? flag.curve.inv : 0,
                                       flag.curve.is_invariant() ? m : 0, flag, order);
  auto it = units.find(flag);
  if (it != units.end()) f = f * it->second;
  return f;
}

long SurfaceIdele::flag_vu(const FlagKey& flag) const {
  return flag_factor(flag, kUnitOrder).valuation2().second;
}

bool SurfaceIdele::equals_certified(const SurfaceIdele& o) const {
  if (!(divisor() == o.divisor())) return false;
  std::set<FlagKey> keys;
  for (const auto& [flag, u] : units) keys.insert(flag);
  for (const auto& [flag, u] : o.units) keys.insert(flag);
  for (const auto& flag : keys) {
    IterLaurent a = units.count(flag) ? units.at(flag) : IterLaurent::one(surf.field);
    IterLaurent b = o.units.count(flag) ? o.units.at(flag) : IterLaurent::one(surf.field);
    IterLaurent diff = a - b;
    if (diff.is_unit()) return false;
  }
  return true;
}

std::string SurfaceIdele::str() const {
  std::ostringstream os;
  os << "idele(";
  bool first = true;
  for (const auto& [c, m] : monomial) {
    if (!first) os << " ";
    os << "t_" << surf.curve_label(c) << "^" << m;
    first = false;
  }
  if (first) os << "1";
  if (!units.empty()) os << " *" << units.size() << "units";
  os << ")";
  return os.str();
}

}  // namespace adelic
