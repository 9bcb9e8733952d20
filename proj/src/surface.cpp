#include "adelic/surface.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <set>
#include <sstream>

namespace adelic {

Surface Surface::parse(const std::string& selector, const FieldSpec& f) {
  if (selector == "p2") return p2(f);
  if (selector == "p1xp1") return p1xp1(f);
  throw Error("unknown surface selector: " + selector + " (expected p2 or p1xp1)");
}

std::vector<int> Surface::divisor_curves() const {
  return kind == SurfaceKind::p2 ? std::vector<int>{0, 1, 2} : std::vector<int>{0, 1};
}

std::string Surface::curve_label(int id) const {
  if (kind == SurfaceKind::p2) {
    static const char* names[] = {"L0", "L1", "L2"};
    if (id >= 0 && id < 3) return names[id];
  } else {
    static const char* names[] = {"F", "G", "F*", "G*"};
    if (id >= 0 && id < 4) return names[id];
  }
  throw Error("bad invariant curve id " + std::to_string(id));
}

bool SurfaceCurve::operator==(const SurfaceCurve& o) const {
  if (inv != o.inv) return false;
  if (inv >= 0) return true;
  return general.has_value() == o.general.has_value() && (!general || *general == *o.general);
}

bool SurfaceCurve::operator<(const SurfaceCurve& o) const {
  bool gi = is_invariant(), go = o.is_invariant();
  if (gi != go) return gi;  // invariant curves sort first
  if (gi) return inv < o.inv;
  return general->str() < o.general->str();
}

std::string SurfaceCurve::label(const Surface& s) const {
  if (is_invariant()) return s.curve_label(inv);
  return "{" + general->str() + "}";
}

bool SurfacePoint::operator==(const SurfacePoint& o) const {
  if (p2_inf != o.p2_inf || a_inf != o.a_inf || b_inf != o.b_inf) return false;
  if (p2_inf) return a_inf || a == o.a;
  bool ok = true;
  if (!a_inf) ok = ok && a == o.a;
  if (!b_inf) ok = ok && b == o.b;
  return ok;
}

bool SurfacePoint::operator<(const SurfacePoint& o) const {
  auto rank = [](const SurfacePoint& p) { return (p.p2_inf ? 4 : 0) + (p.a_inf ? 2 : 0) + (p.b_inf ? 1 : 0); };
  if (rank(*this) != rank(o)) return rank(*this) < rank(o);
  if (!a_inf && !(a == o.a)) return a < o.a;
  if (!p2_inf && !b_inf && !(b == o.b)) return b < o.b;
  return false;
}

std::string SurfacePoint::str() const {
  if (p2_inf) return a_inf ? "[1:0:0]" : "[" + a.str() + ":1:0]";
  std::string xs = a_inf ? "inf" : a.str();
  std::string ys = b_inf ? "inf" : b.str();
  return "(" + xs + "," + ys + ")";
}

long SurfaceDivisor::at(const SurfaceCurve& c) const {
  auto it = coeffs.find(c);
  return it == coeffs.end() ? 0 : it->second;
}

void SurfaceDivisor::add(const SurfaceCurve& c, long m) {
  if (m == 0) return;
  long v = at(c) + m;
  if (v == 0)
    coeffs.erase(c);
  else
    coeffs.insert_or_assign(c, v);
}

bool SurfaceDivisor::monomial() const {
  for (const auto& [c, m] : coeffs)
    if (!c.is_invariant()) return false;
  return true;
}

long SurfaceDivisor::coeff_abs_sum() const {
  long s = 0;
  for (const auto& [c, m] : coeffs) s += m < 0 ? -m : m;
  return s;
}

SurfaceDivisor SurfaceDivisor::operator+(const SurfaceDivisor& o) const {
  SurfaceDivisor r = *this;
  for (const auto& [c, m] : o.coeffs) r.add(c, m);
  return r;
}

SurfaceDivisor SurfaceDivisor::operator-(const SurfaceDivisor& o) const { return *this + (-o); }

SurfaceDivisor SurfaceDivisor::operator-() const {
  SurfaceDivisor r;
  for (const auto& [c, m] : coeffs) r.coeffs.insert({c, -m});
  return r;
}

SurfaceDivisor SurfaceDivisor::scaled(long k) const {
  SurfaceDivisor r;
  if (k == 0) return r;
  for (const auto& [c, m] : coeffs) r.coeffs.insert({c, k * m});
  return r;
}

SurfaceDivisor SurfaceDivisor::componentwise_min(const SurfaceDivisor& a, const SurfaceDivisor& b) {
  SurfaceDivisor r;
  std::set<SurfaceCurve> keys;
  for (const auto& [c, m] : a.coeffs) keys.insert(c);
  for (const auto& [c, m] : b.coeffs) keys.insert(c);
  for (const auto& c : keys) r.add(c, std::min(a.at(c), b.at(c)));
  return r;
}

bool SurfaceDivisor::leq(const SurfaceDivisor& o) const {
  std::set<SurfaceCurve> keys;
  for (const auto& [c, m] : coeffs) keys.insert(c);
  for (const auto& [c, m] : o.coeffs) keys.insert(c);
  for (const auto& c : keys)
    if (at(c) > o.at(c)) return false;
  return true;
}

SurfaceDivisor SurfaceDivisor::of_curve(const SurfaceCurve& c, long m) {
  SurfaceDivisor d;
  d.add(c, m);
  return d;
}

std::string SurfaceDivisor::str(const Surface& s) const {
  if (coeffs.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [c, m] : coeffs) {
    if (!first) os << (m >= 0 ? " + " : " - ");
    if (first && m < 0) os << "-";
    long a = m < 0 ? -m : m;
    os << a << c.label(s);
    first = false;
  }
  return os.str();
}

SurfaceDivisor parse_surface_divisor(const std::string& text, const Surface& s) {
  SurfaceDivisor d;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  bool any = false;
  for (;;) {
    skip();
    if (i >= text.size()) break;
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (any) {
      throw ParseError("expected + or - between divisor terms", i);
    }
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    bool had_digits = i > start;
    long mult = had_digits ? std::stol(text.substr(start, i - start)) : 1;
    skip();
    int id = -1;
    for (int cid : s.divisor_curves()) {
      std::string lab = s.curve_label(cid);
      if (text.compare(i, lab.size(), lab) == 0) {
        // longest match wins (L1 vs L10 is not an issue with this grammar)
        id = cid;
        i += lab.size();
        break;
      }
    }
    if (id < 0) {
      if (had_digits && mult == 0) {  // bare zero divisor term
        any = true;
        continue;
      }
      throw ParseError("expected a curve label", i);
    }
    d.add(SurfaceCurve::invariant(id), sign * mult);
    any = true;
  }
  if (!any) throw ParseError("empty divisor", 0);
  return d;
}

std::vector<SurfacePoint> fixed_points_of(const Surface& s, int curve_id) {
  const FieldSpec& f = s.field;
  Scalar z = Scalar::zero(f);
  if (s.kind == SurfaceKind::p2) {
    SurfacePoint p01 = SurfacePoint::affine(z, z);
    SurfacePoint p02 = SurfacePoint::p2_infinity(z);          // L0 ∩ L2
    SurfacePoint p12 = SurfacePoint::p2_infinity_xi_inf(f);   // L1 ∩ L2
    switch (curve_id) {
      case 0: return {p01, p02};
      case 1: return {p01, p12};
      case 2: return {p02, p12};
    }
  } else {
    auto pt = [&](bool ai, bool bi) {
      return SurfacePoint::prod(f, ai ? std::nullopt : std::optional<Scalar>(z),
                                bi ? std::nullopt : std::optional<Scalar>(z));
    };
    switch (curve_id) {
      case 0: return {pt(false, false), pt(false, true)};   // F: (0,0), (0,inf)
      case 1: return {pt(false, false), pt(true, false)};   // G: (0,0), (inf,0)
      case 2: return {pt(true, false), pt(true, true)};     // F*: (inf,0), (inf,inf)
      case 3: return {pt(false, true), pt(true, true)};     // G*: (0,inf), (inf,inf)
    }
  }
  throw Error("bad curve id");
}

std::vector<FlagKey> all_toric_flags(const Surface& s) {
  std::vector<FlagKey> out;
  for (int id = 0; id < s.invariant_count(); ++id)
    for (const auto& p : fixed_points_of(s, id)) out.push_back({SurfaceCurve::invariant(id), p});
  return out;
}

SurfacePoint aux_point_on(const Surface& s, int curve_id, const Scalar& param) {
  const FieldSpec& f = s.field;
  if (param.is_zero()) throw Error("aux point coincides with a fixed point");
  if (s.kind == SurfaceKind::p2) {
    switch (curve_id) {
      case 0: return SurfacePoint::affine(Scalar::zero(f), param);
      case 1: return SurfacePoint::affine(param, Scalar::zero(f));
      case 2: return SurfacePoint::p2_infinity(param);
    }
  } else {
    switch (curve_id) {
      case 0: return SurfacePoint::prod(f, Scalar::zero(f), param);
      case 1: return SurfacePoint::prod(f, param, Scalar::zero(f));
      case 2: return SurfacePoint::prod(f, std::nullopt, param);
      case 3: return SurfacePoint::prod(f, param, std::nullopt);
    }
  }
  throw Error("bad curve id");
}

FlagKey flag_on(const Surface& s, int curve_id, const SurfacePoint& p) {
  return FlagKey{SurfaceCurve::invariant(curve_id), p};
}

namespace {

IterLaurent mono(const FieldSpec& f, long ue, long te) {
  return IterLaurent::monomial(f, ue, te, Scalar::one(f));
}

IterLaurent shift_u(const FieldSpec& f, const Scalar& beta) {
  // u + beta
  return IterLaurent::monomial(f, 1, 0, Scalar::one(f)) + IterLaurent::constant(f, beta);
}

// substitution table for the invariant flags
FlagData invariant_flag_data(const Surface& s, int cid, const SurfacePoint& pt, long order) {
  const FieldSpec& f = s.field;
  FlagData fd{IterLaurent::zero(f), IterLaurent::zero(f), CurvePoint::infinity(f), std::nullopt};
  auto fixed = fixed_points_of(s, cid);
  bool at_first = pt == fixed[0];
  bool at_second = pt == fixed[1];

  if (s.kind == SurfaceKind::p2) {
    if (at_first || at_second) {
      switch (cid) {
        case 0:
          if (at_first) {  // P01: x=t, y=u
            fd.x_of = mono(f, 0, 1);
            fd.y_of = mono(f, 1, 0);
            fd.on_curve = CurvePoint::at(Scalar::zero(f));
            fd.crossing = 1;
          } else {  // P02: x=t/u, y=1/u
            fd.x_of = mono(f, -1, 1);
            fd.y_of = mono(f, -1, 0);
            fd.on_curve = CurvePoint::infinity(f);
            fd.crossing = 2;
          }
          return fd;
        case 1:
          if (at_first) {  // P01: x=u, y=t
            fd.x_of = mono(f, 1, 0);
            fd.y_of = mono(f, 0, 1);
            fd.on_curve = CurvePoint::at(Scalar::zero(f));
            fd.crossing = 0;
          } else {  // P12: x=1/u, y=t/u
            fd.x_of = mono(f, -1, 0);
            fd.y_of = mono(f, -1, 1);
            fd.on_curve = CurvePoint::infinity(f);
            fd.crossing = 2;
          }
          return fd;
        case 2:
          if (at_first) {  // P02: x=u/t, y=1/t
            fd.x_of = mono(f, 1, -1);
            fd.y_of = mono(f, 0, -1);
            fd.on_curve = CurvePoint::at(Scalar::zero(f));
            fd.crossing = 0;
          } else {  // P12: x=1/t, y=u/t
            fd.x_of = mono(f, 0, -1);
            fd.y_of = mono(f, 1, -1);
            fd.on_curve = CurvePoint::infinity(f);
            fd.crossing = 1;
          }
          return fd;
      }
    }
    // aux points
    switch (cid) {
      case 0:  // (0, beta): x=t, y=u+beta
        fd.x_of = mono(f, 0, 1);
        fd.y_of = shift_u(f, pt.b);
        fd.on_curve = CurvePoint::at(pt.b);
        return fd;
      case 1:  // (alpha, 0): x=u+alpha, y=t
        fd.x_of = shift_u(f, pt.a);
        fd.y_of = mono(f, 0, 1);
        fd.on_curve = CurvePoint::at(pt.a);
        return fd;
      case 2:  // [beta:1:0]: x=(u+beta)/t, y=1/t
        fd.x_of = shift_u(f, pt.a) * mono(f, 0, -1);
        fd.y_of = mono(f, 0, -1);
        fd.on_curve = CurvePoint::at(pt.a);
        return fd;
    }
  } else {
    if (at_first || at_second) {
      bool second = at_second;
      switch (cid) {
        case 0:  // F: x=t, y=u or 1/u
          fd.x_of = mono(f, 0, 1);
          fd.y_of = mono(f, second ? -1 : 1, 0);
          fd.on_curve = second ? CurvePoint::infinity(f) : CurvePoint::at(Scalar::zero(f));
          fd.crossing = second ? 3 : 1;
          return fd;
        case 1:  // G: y=t, x=u or 1/u
          fd.x_of = mono(f, second ? -1 : 1, 0);
          fd.y_of = mono(f, 0, 1);
          fd.on_curve = second ? CurvePoint::infinity(f) : CurvePoint::at(Scalar::zero(f));
          fd.crossing = second ? 2 : 0;
          return fd;
        case 2:  // F*: x=1/t, y=u or 1/u
          fd.x_of = mono(f, 0, -1);
          fd.y_of = mono(f, second ? -1 : 1, 0);
          fd.on_curve = second ? CurvePoint::infinity(f) : CurvePoint::at(Scalar::zero(f));
          fd.crossing = second ? 3 : 1;
          return fd;
        case 3:  // G*: y=1/t, x=u or 1/u
          fd.x_of = mono(f, second ? -1 : 1, 0);
          fd.y_of = mono(f, 0, -1);
          fd.on_curve = second ? CurvePoint::infinity(f) : CurvePoint::at(Scalar::zero(f));
          fd.crossing = second ? 2 : 0;
          return fd;
      }
    }
    switch (cid) {
      case 0:
        fd.x_of = mono(f, 0, 1);
        fd.y_of = shift_u(f, pt.b);
        fd.on_curve = CurvePoint::at(pt.b);
        return fd;
      case 1:
        fd.x_of = shift_u(f, pt.a);
        fd.y_of = mono(f, 0, 1);
        fd.on_curve = CurvePoint::at(pt.a);
        return fd;
      case 2:
        fd.x_of = mono(f, 0, -1);
        fd.y_of = shift_u(f, pt.b);
        fd.on_curve = CurvePoint::at(pt.b);
        return fd;
      case 3:
        fd.x_of = shift_u(f, pt.a);
        fd.y_of = mono(f, 0, -1);
        fd.on_curve = CurvePoint::at(pt.a);
        return fd;
    }
  }
  (void)order;
  throw UnsupportedFlag("no substitution for this invariant flag");
}

// flags of general curves: affine smooth points via a branch expansion, plus
// exact expansions at infinity for lines on p2
FlagData general_flag_data(const Surface& s, const BivarPoly& F, const SurfacePoint& pt, long order) {
  const FieldSpec& f = s.field;
  FlagData fd{IterLaurent::zero(f), IterLaurent::zero(f), CurvePoint::infinity(f), std::nullopt};

  if (!pt.p2_inf && !pt.a_inf && !pt.b_inf) {
    if (!F.eval_point(pt.a, pt.b).is_zero()) throw UnsupportedFlag("point is not on the curve");
    Scalar fy = F.dy().eval_point(pt.a, pt.b);
    if (!fy.is_zero()) {
      fd.x_of = shift_u(f, pt.a);
      fd.y_of = hensel_branch(F, pt.a, pt.b, order);
      fd.on_curve = CurvePoint::at(pt.a);
      return fd;
    }
    Scalar fx = F.dx().eval_point(pt.a, pt.b);
    if (!fx.is_zero()) {
      BivarPoly Fsw(f.kind == FieldKind::prime_field ? f : f);
      Fsw = BivarPoly::zero(f);
      for (const auto& [k, c] : F.terms()) Fsw.add_term(k.second, k.first, c);
      fd.x_of = hensel_branch(Fsw, pt.b, pt.a, order);
      fd.y_of = shift_u(f, pt.b);
      fd.on_curve = CurvePoint::at(pt.b);
      return fd;
    }
    throw UnsupportedFlag("curve is singular at the point");
  }

  if (s.kind == SurfaceKind::p2 && pt.p2_inf) {
    // only lines are expanded at infinity
    if (!(F.total_degree() == 1 && F.min_deg_x() >= 0 && F.min_deg_y() >= 0))
      throw UnsupportedFlag("general curves are only expanded at infinity when they are lines");
    Scalar cy = Scalar::zero(f), cx = Scalar::zero(f), c0 = Scalar::zero(f);
    for (const auto& [k, c] : F.terms()) {
      if (k == std::make_pair(0L, 1L)) cy = c;
      else if (k == std::make_pair(1L, 0L)) cx = c;
      else c0 = c;
    }
    if (!cy.is_zero()) {
      // y = alpha x + beta meets L2 at [1:alpha:0], i.e. xi = 1/alpha
      Scalar alpha = -cx / cy, beta = -c0 / cy;
      bool here = alpha.is_zero() ? pt.a_inf : (!pt.a_inf && pt.a * alpha == Scalar::one(f));
      if (!here) throw UnsupportedFlag("line does not pass through this infinity point");
      // u = 1/x, t = cy*(y - alpha x - beta)/x:  x = 1/u, y = (t/cy + alpha + beta u)/u
      IterLaurent tpart = IterLaurent::monomial(f, 0, 1, cy.inv());
      fd.x_of = mono(f, -1, 0);
      fd.y_of = (tpart + IterLaurent::constant(f, alpha) + IterLaurent::monomial(f, 1, 0, beta)) * mono(f, -1, 0);
      fd.on_curve = CurvePoint::infinity(f);
      return fd;
    }
    // vertical line x = x0 meets L2 at [0:1:0], i.e. xi = 0
    Scalar x0 = -c0 / cx;
    if (pt.a_inf || !pt.a.is_zero()) throw UnsupportedFlag("vertical lines meet infinity at [0:1:0]");
    // u = 1/y, t = cx*(x - x0)/y:  x = t/cx/u + x0, y = 1/u
    fd.x_of = IterLaurent::monomial(f, -1, 1, cx.inv()) + IterLaurent::constant(f, x0);
    fd.y_of = mono(f, -1, 0);
    fd.on_curve = CurvePoint::infinity(f);
    return fd;
  }
  throw UnsupportedFlag("general-curve flags at infinite points are not supported on this surface");
}

}  // namespace

FlagData flag_data(const Surface& s, const FlagKey& flag, long order) {
  if (flag.curve.is_invariant()) return invariant_flag_data(s, flag.curve.inv, flag.point, order);
  return general_flag_data(s, *flag.curve.general, flag.point, order);
}

BivarRational curve_uniformizer(const Surface& s, int curve_id) {
  const FieldSpec& f = s.field;
  BivarPoly x = BivarPoly::var_x(f), y = BivarPoly::var_y(f);
  BivarPoly one = BivarPoly::constant(f, Scalar::one(f));
  if (s.kind == SurfaceKind::p2) {
    switch (curve_id) {
      case 0: return BivarRational{x, one};
      case 1: return BivarRational{y, one};
      case 2: return BivarRational{one, x};  // 1/x vanishes to order 1 along L2
    }
  } else {
    switch (curve_id) {
      case 0: return BivarRational{x, one};
      case 1: return BivarRational{y, one};
      case 2: return BivarRational{one, x};
      case 3: return BivarRational{one, y};
    }
  }
  throw Error("bad curve id");
}

std::vector<FlagKey> support_flags(const Surface& s, const std::vector<SurfaceDivisor>& divisors) {
  std::set<FlagKey> out;
  std::set<int> inv_ids;
  std::vector<BivarPoly> generals;
  for (const auto& d : divisors)
    for (const auto& [c, m] : d.coeffs) {
      if (c.is_invariant())
        inv_ids.insert(c.inv);
      else
        generals.push_back(*c.general);
    }
  for (int id : inv_ids)
    for (const auto& p : fixed_points_of(s, id)) out.insert({SurfaceCurve::invariant(id), p});
  // general support curves contribute flags at their rational crossings with
  // the affine invariant curves in the set
  for (const auto& g : generals) {
    for (int id : inv_ids) {
      if (s.kind == SurfaceKind::p2 && id == 2) continue;
      if (s.kind == SurfaceKind::p1xp1 && id >= 2) continue;
      // restrict g to the curve (x=0 or y=0) and find rational roots
      UniPoly r(s.field);
      for (const auto& [k, c] : g.terms()) {
        if (id == 0 && k.first == 0) r.add_term(k.second, c);
        if (id == 1 && k.second == 0) r.add_term(k.first, c);
      }
      if (r.is_zero()) continue;
      auto roots = r.roots();
      if (!roots.complete)
        throw UnsupportedConfiguration("could not certify rational intersection points");
      if (static_cast<long>(roots.values.size()) <
          (r.degree() - r.low_degree()))
        throw UnsupportedConfiguration("support curves meet at a non-rational point");
      for (const auto& v : roots.values) {
        SurfacePoint p = id == 0 ? SurfacePoint::affine(Scalar::zero(s.field), v)
                                 : SurfacePoint::affine(v, Scalar::zero(s.field));
        out.insert({SurfaceCurve::from_poly(g), p});
        out.insert({SurfaceCurve::invariant(id), p});
      }
    }
  }
  return std::vector<FlagKey>(out.begin(), out.end());
}

IterLaurent local_equation(const Surface& s, const SurfaceDivisor& d, const FlagKey& flag, LocalEqMode mode,
                           long order) {
  const FieldSpec& f = s.field;
  FlagData fd = flag_data(s, flag, order + 2);
  if (mode == LocalEqMode::curvewise) {
    long m = d.at(flag.curve);
    if (m == 0) return IterLaurent::one(f);
    if (flag.curve.is_invariant()) {
      BivarRational t = curve_uniformizer(s, flag.curve.inv);
      return t.pow(m).eval(fd.x_of, fd.y_of, order, order);
    }
    return BivarRational::of(*flag.curve.general).pow(m).eval(fd.x_of, fd.y_of, order, order);
  }
  // pointwise: product of local-equation germs of the curves through the point
  IterLaurent acc = IterLaurent::one(f);
  for (const auto& [c, m] : d.coeffs) {
    if (c.is_invariant()) {
      bool own = flag.curve == c;
      bool crossing = fd.crossing && *fd.crossing == c.inv;
      bool through = own || crossing;
      if (!through) {
        // the curve may still pass through the point (e.g. a fixed point of
        // another pair); detect via fixed-point membership
        for (const auto& p : fixed_points_of(s, c.inv)) through = through || p == flag.point;
      }
      if (!through) continue;
      if (own) {
        acc = acc * mono(f, 0, 1).pow(m);
      } else if (crossing) {
        acc = acc * mono(f, 1, 0).pow(m);
      } else {
        throw UnsupportedFlag("divisor component passes through the point outside the flag's coordinate pair");
      }
    } else {
      Scalar v = Scalar::one(f);
      bool through = false;
      if (!flag.point.p2_inf && !flag.point.a_inf && !flag.point.b_inf) {
        v = c.general->eval_point(flag.point.a, flag.point.b);
        through = v.is_zero();
      }
      if (!through) continue;
      acc = acc * BivarRational::of(*c.general).pow(m).eval(fd.x_of, fd.y_of, order, order);
    }
  }
  return acc;
}

IterLaurent expand_rational(const Surface& s, const BivarPoly& num, const BivarPoly& den, const FlagKey& flag,
                            Window t_window, Window u_window) {
  if (den.is_zero()) throw ZeroDenominator("zero denominator polynomial");
  long span = std::max(std::labs(t_window.lo), std::labs(t_window.hi)) +
              std::max(std::labs(u_window.lo), std::labs(u_window.hi)) + 6;
  for (int attempt = 0; attempt < 3; ++attempt, span *= 2) {
    FlagData fd = flag_data(s, flag, span);
    IterLaurent dv = den.eval(fd.x_of, fd.y_of, span, span);
    if (!dv.is_unit()) {
      if (dv.is_zero_certified()) throw ZeroDenominator("denominator vanishes identically at this flag");
      continue;  // not enough precision to certify the leading term
    }
    IterLaurent r = num.eval(fd.x_of, fd.y_of, span, span) * dv.invert(span, span);
    bool ok = true;
    for (long j = t_window.lo; j <= t_window.hi && ok; ++j) ok = r.coeff_known(j, u_window.hi);
    if (ok) return r;
  }
  throw WindowCollapse("expansion could not be certified on the requested window");
}

long classical_intersection(const Surface& s, const SurfaceDivisor& a, const SurfaceDivisor& b) {
  if (s.kind == SurfaceKind::p2) {
    auto deg = [&](const SurfaceDivisor& d) {
      long t = 0;
      for (const auto& [c, m] : d.coeffs) t += m * (c.is_invariant() ? 1 : c.general->total_degree());
      return t;
    };
    return deg(a) * deg(b);
  }
  auto bideg = [&](const SurfaceDivisor& d) {
    long da = 0, db = 0;
    for (const auto& [c, m] : d.coeffs) {
      if (c.is_invariant()) {
        if (c.inv == 0 || c.inv == 2)
          da += m;
        else
          db += m;
      } else {
        da += m * std::max(c.general->max_deg_x(), 0L);
        db += m * std::max(c.general->max_deg_y(), 0L);
      }
    }
    return std::make_pair(da, db);
  };
  auto [a1, b1] = bideg(a);
  auto [a2, b2] = bideg(b);
  return a1 * b2 + a2 * b1;
}

long classical_chi_diff(const Surface& s, const SurfaceDivisor& d) {
  if (!d.monomial()) throw NonMonomial("chi oracle needs a monomial divisor");
  if (s.kind == SurfaceKind::p2) {
    long m = 0;
    for (const auto& [c, k] : d.coeffs) m += k;
    return m * (m + 3) / 2;
  }
  long a = 0, b = 0;
  for (const auto& [c, k] : d.coeffs) {
    if (c.inv == 0 || c.inv == 2)
      a += k;
    else
      b += k;
  }
  return a * b + a + b;
}

CanonicalData canonical_data(const Surface& s) {
  const FieldSpec& f = s.field;
  if (s.kind == SurfaceKind::p2) {
    SurfaceDivisor k;
    k.add(SurfaceCurve::invariant(2), -3);
    return {BivarRational::one(f), k};
  }
  SurfaceDivisor k;
  k.add(SurfaceCurve::invariant(0), -2);
  k.add(SurfaceCurve::invariant(1), -2);
  BivarRational g{BivarPoly::constant(f, Scalar::one(f)), BivarPoly::monomial(f, 2, 2, Scalar::one(f))};
  return {g, k};
}

TwoForm expand_two_form(const Surface& s, const BivarRational& g, const FlagKey& flag, long order) {
  long work = order + 6;
  FlagData fd = flag_data(s, flag, work);
  IterLaurent xu = fd.x_of.d_inner(), xt = fd.x_of.d_outer();
  IterLaurent yu = fd.y_of.d_inner(), yt = fd.y_of.d_outer();
  IterLaurent jac = xu * yt - xt * yu;
  IterLaurent coeff = g.eval(fd.x_of, fd.y_of, work, work) * jac;
  return TwoForm{coeff, true};
}

namespace {
std::atomic<long> g_window_override{0};
}

long default_window_radius(long coeff_abs_sum) {
  long forced = g_window_override.load();
  return forced > 0 ? forced : 2 * coeff_abs_sum + 4;
}

void set_window_override(long radius) { g_window_override.store(radius); }

}  // namespace adelic
