#include "adelic/residues.hpp"

#include <cctype>
#include <set>

#include "adelic/linalg.hpp"

namespace adelic {

namespace {

// clear negative exponents out of a rational function
BivarRational normalized(const BivarRational& r) {
  const FieldSpec& f = r.num.field();
  long nx = std::min(r.num.min_deg_x(), 0L), ny = std::min(r.num.min_deg_y(), 0L);
  long dx = std::min(r.den.min_deg_x(), 0L), dy = std::min(r.den.min_deg_y(), 0L);
  BivarPoly m = BivarPoly::monomial(f, std::max(-nx, -dx), std::max(-ny, -dy), Scalar::one(f));
  return BivarRational{r.num * m, r.den * m};
}

Scalar residue_at(const Surface& s, const BivarRational& g, const FlagKey& flag, long base_order) {
  long order = base_order;
  for (int attempt = 0; attempt < 3; ++attempt, order *= 2) {
    try {
      TwoForm w = expand_two_form(s, g, flag, order);
      return residue2(w);
    } catch (const WindowCollapse&) {
      continue;
    }
  }
  throw WindowCollapse("residue not certified at flag " + flag.str(s));
}

long degree_heuristic(const BivarRational& g) {
  return g.num.total_degree() + g.den.total_degree() + 8;
}

// roots of the restriction of a polynomial to an invariant curve, as values
// of the curve's own coordinate (finite part only; fixed points are handled
// separately). Monomial content is stripped first: powers of the coordinate
// functions only move poles onto the boundary, where the fixed points sit.
std::vector<Scalar> restriction_roots(const Surface& s, int curve_id, const BivarPoly& den_in) {
  const FieldSpec& f = s.field;
  BivarPoly den = BivarPoly::zero(f);
  long cx = den_in.min_deg_x(), cy = den_in.min_deg_y();
  for (const auto& [k, c] : den_in.terms()) den.add_term(k.first - cx, k.second - cy, c);

  UniPoly r(f);
  if (s.kind == SurfaceKind::p2) {
    if (curve_id == 0) {  // x=0, coordinate y
      for (const auto& [k, c] : den.terms())
        if (k.first == 0) r.add_term(k.second, c);
    } else if (curve_id == 1) {  // y=0, coordinate x
      for (const auto& [k, c] : den.terms())
        if (k.second == 0) r.add_term(k.first, c);
    } else {  // L2: top homogeneous part, coordinate xi = x/y
      long top = den.total_degree();
      for (const auto& [k, c] : den.terms())
        if (k.first + k.second == top) r.add_term(k.first, c);  // H(xi,1)
    }
  } else {
    if (curve_id == 0 || curve_id == 2) {  // fibers of the first factor, coordinate y
      long xv = curve_id == 0 ? 0 : den.max_deg_x();
      for (const auto& [k, c] : den.terms())
        if (k.first == xv) r.add_term(k.second, c);
    } else {  // coordinate x
      long yv = curve_id == 1 ? 0 : den.max_deg_y();
      for (const auto& [k, c] : den.terms())
        if (k.second == yv) r.add_term(k.first, c);
    }
  }
  if (r.is_zero())
    throw UnsupportedConfiguration("denominator restricted to the curve vanishes identically");
  auto roots = r.roots();
  if (!roots.complete) throw UnsupportedConfiguration("could not certify rational pole locations");
  std::vector<Scalar> out;
  for (const auto& v : roots.values)
    if (!v.is_zero()) out.push_back(v);  // zero is a fixed point, always included
  return out;
}

bool is_line(const BivarPoly& p) { return p.total_degree() == 1 && p.min_deg_x() >= 0 && p.min_deg_y() >= 0; }

// exact division of p by the line cy*y + cx*x + c0 (cy != 0), top-down in y;
// returns nothing when the line does not divide p
std::optional<BivarPoly> divide_by_line_y(const BivarPoly& p, const Scalar& cy, const Scalar& cx,
                                          const Scalar& c0) {
  const FieldSpec& f = p.field();
  BivarPoly rem = p, quot = BivarPoly::zero(f);
  while (!rem.is_zero()) {
    long dy = rem.max_deg_y();
    if (dy < 1) return std::nullopt;
    // leading-in-y slice
    BivarPoly lead = BivarPoly::zero(f);
    for (const auto& [k, c] : rem.terms())
      if (k.second == dy) lead.add_term(k.first, dy - 1, c * cy.inv());
    quot = quot + lead;
    BivarPoly line = BivarPoly::monomial(f, 0, 1, cy) + BivarPoly::monomial(f, 1, 0, cx) +
                     BivarPoly::constant(f, c0);
    rem = rem - lead * line;
    if (rem.is_zero()) return quot;
    if (rem.max_deg_y() >= dy) return std::nullopt;
  }
  return quot;
}

}  // namespace

Scalar global_pairing(const Surface& s, const AdeleSample& f, const AdeleSample& g,
                      const CanonicalData& can, long order) {
  Scalar total = Scalar::zero(s.field);
  std::set<FlagKey> flags;
  for (const auto& [k, v] : f.entries) flags.insert(k);
  for (const auto& [k, v] : g.entries) flags.insert(k);
  for (const auto& flag : flags) {
    auto itf = f.entries.find(flag);
    auto itg = g.entries.find(flag);
    if (itf == f.entries.end() || itg == g.entries.end()) continue;  // product vanishes
    TwoForm w = expand_two_form(s, can.omega, flag, order);
    TwoForm prod{itf->second * itg->second * w.coefficient, w.frame_du_dt};
    total = total + residue2(prod);
  }
  return total;
}

FormSpec parse_form(const std::string& text, const FieldSpec& f) {
  struct P {
    const std::string& s;
    const FieldSpec& f;
    std::size_t i = 0;
    std::vector<BivarPoly> dens;

    void skip() {
      while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
      skip();
      if (i < s.size() && s[i] == c) {
        ++i;
        return true;
      }
      return false;
    }
    BivarRational expr() {
      BivarRational acc = term();
      for (;;) {
        skip();
        if (eat('+'))
          acc = acc + term();
        else if (i < s.size() && s[i] == '-' ) {
          ++i;
          acc = acc - term();
        } else
          break;
      }
      return acc;
    }
    BivarRational term() {
      BivarRational acc = factor();
      for (;;) {
        skip();
        if (eat('*'))
          acc = acc * factor();
        else if (eat('/')) {
          BivarRational d = factor();
          if (d.num.is_zero()) throw ParseError("division by zero", i);
          dens.push_back(d.num);
          acc = acc / d;
        } else
          break;
      }
      return acc;
    }
    BivarRational factor() {
      BivarRational b = base();
      skip();
      if (eat('^')) {
        skip();
        std::size_t st = i;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == st) throw ParseError("expected exponent", i);
        long e = std::stol(s.substr(st, i - st));
        if (e < 0) dens.push_back(b.num);
        return b.pow(e);
      }
      return b;
    }
    BivarRational base() {
      skip();
      if (eat('(')) {
        BivarRational e = expr();
        if (!eat(')')) throw ParseError("expected )", i);
        return e;
      }
      if (i < s.size() && (s[i] == 'x' || s[i] == 'y')) {
        char v = s[i++];
        return BivarRational::of(v == 'x' ? BivarPoly::var_x(f) : BivarPoly::var_y(f));
      }
      if (i < s.size() && s[i] == '-') {
        ++i;
        BivarRational e = base();
        return BivarRational::of(BivarPoly::zero(f)) - e;
      }
      std::size_t st = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i == st) throw ParseError("expected a factor", i);
      return BivarRational::of(BivarPoly::constant(f, Scalar::from_int(f, std::stol(s.substr(st, i - st)))));
    }
  };
  P p{text, f};
  BivarRational v = p.expr();
  p.skip();
  if (p.i != text.size()) throw ParseError("trailing input in form", p.i);
  return FormSpec{normalized(v), p.dens, text};
}

Scalar reciprocity_along_curve(const Surface& s, const FormSpec& form, const SurfaceCurve& c) {
  const FieldSpec& f = s.field;
  BivarRational total = normalized(form.value * canonical_data(s).omega);
  long order = degree_heuristic(total);
  Scalar sum = Scalar::zero(f);
  std::set<FlagKey> flags;

  if (c.is_invariant()) {
    for (const auto& pt : fixed_points_of(s, c.inv)) flags.insert({c, pt});
    for (const auto& v : restriction_roots(s, c.inv, total.den))
      flags.insert({c, aux_point_on(s, c.inv, v)});
  } else {
    if (s.kind != SurfaceKind::p2 || !is_line(*c.general))
      throw UnsupportedConfiguration("along-curve sums over general curves are supported for lines on p2");
    const BivarPoly& L = *c.general;
    Scalar cx = Scalar::zero(f), cy = Scalar::zero(f), c0 = Scalar::zero(f);
    for (const auto& [k, cf] : L.terms()) {
      if (k == std::make_pair(1L, 0L)) cx = cf;
      else if (k == std::make_pair(0L, 1L)) cy = cf;
      else c0 = cf;
    }
    if (!cy.is_zero()) {
      Scalar slope = -cx / cy, inter = -c0 / cy;
      // strip copies of the line itself out of the denominator first
      BivarPoly den = total.den;
      while (auto q = divide_by_line_y(den, cy, cx, c0)) den = *q;
      // restrict the rest: substitute y = slope x + inter
      UniPoly r(f);
      for (const auto& [k, cf] : den.terms()) {
        UniPoly term(f);
        term.add_term(k.first, cf);
        for (long q = 0; q < k.second; ++q) {
          UniPoly nt(f);
          for (const auto& [e, cc] : term.terms()) {
            nt.add_term(e + 1, cc * slope);
            nt.add_term(e, cc * inter);
          }
          term = nt;
        }
        for (const auto& [e, cc] : term.terms()) r.add_term(e, cc);
      }
      if (r.is_zero()) throw UnsupportedConfiguration("degenerate restriction to the line");
      auto roots = r.roots();
      if (!roots.complete) throw UnsupportedConfiguration("could not certify rational pole locations");
      for (const auto& v : roots.values) flags.insert({c, SurfacePoint::affine(v, slope * v + inter)});
      // crossings with the boundary carry the 2-form's own poles
      flags.insert({c, SurfacePoint::affine(Scalar::zero(f), inter)});                // on L0
      if (!slope.is_zero()) flags.insert({c, SurfacePoint::affine(-inter / slope, Scalar::zero(f))});  // on L1
      flags.insert({c, slope.is_zero() ? SurfacePoint::p2_infinity_xi_inf(f)
                                       : SurfacePoint::p2_infinity(slope.inv())});    // on L2
    } else {
      // vertical line x = x0; stripping the line means dividing by (x - x0)
      Scalar x0 = -c0 / cx;
      BivarPoly den = total.den;
      for (;;) {
        // divide by (x - x0) in x, top-down
        BivarPoly rem = den, quot = BivarPoly::zero(f);
        bool divides = true;
        while (!rem.is_zero()) {
          long dx = rem.max_deg_x();
          if (dx < 1) {
            divides = false;
            break;
          }
          BivarPoly lead = BivarPoly::zero(f);
          for (const auto& [k, cf] : rem.terms())
            if (k.first == dx) lead.add_term(dx - 1, k.second, cf);
          quot = quot + lead;
          BivarPoly line = BivarPoly::var_x(f) - BivarPoly::constant(f, x0);
          rem = rem - lead * line;
          if (!rem.is_zero() && rem.max_deg_x() >= dx) {
            divides = false;
            break;
          }
        }
        if (!divides) break;
        den = quot;
      }
      UniPoly r(f);
      for (const auto& [k, cf] : den.terms()) r.add_term(k.second, cf * x0.pow(k.first));
      if (r.is_zero()) throw UnsupportedConfiguration("degenerate restriction to the line");
      auto roots = r.roots();
      if (!roots.complete) throw UnsupportedConfiguration("could not certify rational pole locations");
      for (const auto& v : roots.values) flags.insert({c, SurfacePoint::affine(x0, v)});
      flags.insert({c, SurfacePoint::affine(x0, Scalar::zero(f))});                   // on L1
      flags.insert({c, SurfacePoint::p2_infinity(Scalar::zero(f))});                 // [0:1:0] on L2
    }
  }

  for (const auto& flag : flags) sum = sum + residue_at(s, total, flag, order);
  return sum;
}

Scalar reciprocity_around_point(const Surface& s, const FormSpec& form, const SurfacePoint& p) {
  const FieldSpec& f = s.field;
  BivarRational total = normalized(form.value * canonical_data(s).omega);
  long order = degree_heuristic(total);
  std::set<FlagKey> flags;

  // invariant curves through the point
  for (int cid = 0; cid < s.invariant_count(); ++cid) {
    bool through = false;
    for (const auto& q : fixed_points_of(s, cid)) through = through || q == p;
    if (!through && !p.p2_inf && !p.a_inf && !p.b_inf) {
      if (s.kind == SurfaceKind::p2)
        through = (cid == 0 && p.a.is_zero()) || (cid == 1 && p.b.is_zero());
      else
        through = (cid == 0 && p.a.is_zero()) || (cid == 1 && p.b.is_zero());
    }
    if (!through && s.kind == SurfaceKind::p2 && p.p2_inf) through = cid == 2;
    if (!through && s.kind == SurfaceKind::p1xp1) {
      if (cid == 2 && p.a_inf) through = true;
      if (cid == 3 && p.b_inf) through = true;
    }
    if (through) flags.insert(flag_on(s, cid, p));
  }

  // polar components through the point
  for (const auto& fac : form.factors) {
    if (fac.is_monomial()) continue;  // coordinate factors are boundary curves, already included
    if (!p.p2_inf && !p.a_inf && !p.b_inf) {
      if (!fac.eval_point(p.a, p.b).is_zero()) continue;
      if (fac.dx().eval_point(p.a, p.b).is_zero() && fac.dy().eval_point(p.a, p.b).is_zero())
        throw UnsupportedConfiguration("polar curve is singular at the point");
      flags.insert({SurfaceCurve::from_poly(fac), p});
    } else if (s.kind == SurfaceKind::p2 && p.p2_inf && !p.a_inf) {
      // does the closure of {fac=0} pass through [xi:1:0]?
      long top = fac.total_degree();
      Scalar h = Scalar::zero(f);
      for (const auto& [k, cf] : fac.terms())
        if (k.first + k.second == top) h = h + cf * p.a.pow(k.first);
      if (!h.is_zero()) continue;
      if (!is_line(fac))
        throw UnsupportedConfiguration("general polar curves at infinity are supported for lines only");
      flags.insert({SurfaceCurve::from_poly(fac), p});
    } else {
      // infinite points of p1xp1 or [1:0:0]: check boundary-only polar locus
      bool through = false;
      if (s.kind == SurfaceKind::p1xp1) {
        if (p.a_inf && !p.b_inf) {
          Scalar lead = Scalar::zero(f);
          for (const auto& [k, cf] : fac.terms())
            if (k.first == fac.max_deg_x()) lead = lead + cf * p.b.pow(k.second);
          through = lead.is_zero();
        } else if (p.b_inf && !p.a_inf) {
          Scalar lead = Scalar::zero(f);
          for (const auto& [k, cf] : fac.terms())
            if (k.second == fac.max_deg_y()) lead = lead + cf * p.a.pow(k.first);
          through = lead.is_zero();
        } else if (p.a_inf && p.b_inf) {
          through = false;  // conservative: generic factors miss the corner
          for (const auto& [k, cf] : fac.terms())
            through = through || (k.first == fac.max_deg_x() && k.second == fac.max_deg_y());
          through = !through;
        }
      } else if (p.p2_inf && p.a_inf) {
        // [1:0:0]: the top homogeneous part must vanish at (x,y) = (1,0)
        Scalar h = Scalar::zero(f);
        long top = fac.total_degree();
        for (const auto& [k, cf] : fac.terms())
          if (k.first + k.second == top && k.second == 0) h = h + cf;
        through = h.is_zero();
        if (through && !is_line(fac))
          throw UnsupportedConfiguration("general polar curves at infinity are supported for lines only");
      }
      if (through) {
        if (s.kind == SurfaceKind::p1xp1)
          throw UnsupportedConfiguration("general polar curves through infinite points of p1xp1");
        flags.insert({SurfaceCurve::from_poly(fac), p});
      }
    }
  }

  Scalar sum = Scalar::zero(f);
  for (const auto& flag : flags) sum = sum + residue_at(s, total, flag, order);
  return sum;
}

OrthogonalityReport orthogonality_box_check(const Surface& s, const SurfaceDivisor& d, long box_radius) {
  if (!d.monomial()) throw NonMonomial("orthogonality boxes need a monomial divisor");
  const FieldSpec& f = s.field;
  CanonicalData can = canonical_data(s);
  SurfaceDivisor dual = can.k_divisor - d;
  long R = box_radius;
  OrthogonalityReport rep;
  rep.box_radius = R;
  rep.pairs_vanish = true;
  rep.annihilator_matches = true;

  long order = default_window_radius(d.coeff_abs_sum() + can.k_divisor.coeff_abs_sum()) + 2 * R;

  for (const auto& flag : all_toric_flags(s)) {
    FlagData fd = flag_data(s, flag, 6);
    long a_own = d.at_inv(flag.curve.inv);
    long a_cross = fd.crossing ? d.at_inv(*fd.crossing) : 0;
    long b_own = dual.at_inv(flag.curve.inv);
    long b_cross = fd.crossing ? dual.at_inv(*fd.crossing) : 0;
    TwoForm w = expand_two_form(s, can.omega, flag, order);

    auto residue_of_pair = [&](long j1, long m1, long j2, long m2) {
      IterLaurent prod = IterLaurent::monomial(f, m1 + m2, j1 + j2, Scalar::one(f)) * w.coefficient;
      return residue2(TwoForm{prod, w.frame_du_dt});
    };

    // (a) every box monomial of A12(D) annihilates every one of A12((w)-D)
    for (long j1 = -a_own; j1 <= R; ++j1)
      for (long m1 = -a_cross; m1 <= R; ++m1)
        for (long j2 = -b_own; j2 <= R; ++j2)
          for (long m2 = -b_cross; m2 <= R; ++m2) {
            ++rep.checked_pairs;
            if (!residue_of_pair(j1, m1, j2, m2).is_zero()) rep.pairs_vanish = false;
          }

    // (b) pair the box against its residue-reflected box; the kernel of the
    // A12(D)-rows must have exactly the dimension of the A12((w)-D) part
    auto [s_val, r_val] = w.coefficient.valuation2();
    std::vector<std::pair<long, long>> dpart, box2;
    for (long j = -R; j <= R; ++j)
      for (long m = -R; m <= R; ++m)
        if (j >= -a_own && m >= -a_cross) dpart.push_back({j, m});
    long dual_count = 0;
    for (long j = -1 - s_val - R; j <= -1 - s_val + R; ++j)
      for (long m = -1 - r_val - R; m <= -1 - r_val + R; ++m) {
        box2.push_back({j, m});
        if (j >= -b_own && m >= -b_cross) ++dual_count;
      }
    Matrix mat(f, dpart.size(), box2.size());
    for (std::size_t r = 0; r < dpart.size(); ++r)
      for (std::size_t ccol = 0; ccol < box2.size(); ++ccol)
        mat.at(r, ccol) = residue_of_pair(dpart[r].first, dpart[r].second, box2[ccol].first, box2[ccol].second);
    long kernel = static_cast<long>(mat.kernel_dim());
    if (kernel != dual_count) rep.annihilator_matches = false;
  }
  return rep;
}

}  // namespace adelic
