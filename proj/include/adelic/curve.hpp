#pragma once

#include <map>
#include <string>
#include <vector>

#include "adelic/series.hpp"

namespace adelic {

// Degree-1 point of P^1: a base-field value or the point at infinity.
struct CurvePoint {
  bool inf;
  Scalar value;

  static CurvePoint at(const Scalar& v) { return CurvePoint{false, v}; }
  static CurvePoint infinity(const FieldSpec& f) { return CurvePoint{true, Scalar::zero(f)}; }

  bool operator==(const CurvePoint& o) const { return inf == o.inf && (inf || value == o.value); }
  bool operator<(const CurvePoint& o) const {
    if (inf != o.inf) return !inf;  // finite points first, infinity last
    return !inf && value < o.value;
  }
  std::string str() const { return inf ? "inf" : value.str(); }
};

struct CurveDivisor {
  std::map<CurvePoint, long> coeffs;

  long at(const CurvePoint& p) const {
    auto it = coeffs.find(p);
    return it == coeffs.end() ? 0 : it->second;
  }
  void add(const CurvePoint& p, long m) {
    if (m == 0) return;
    long v = at(p) + m;
    if (v == 0)
      coeffs.erase(p);
    else
      coeffs.insert_or_assign(p, v);
  }
  long degree() const {
    long d = 0;
    for (const auto& [p, m] : coeffs) d += m;
    return d;
  }
  CurveDivisor operator+(const CurveDivisor& o) const {
    CurveDivisor r = *this;
    for (const auto& [p, m] : o.coeffs) r.add(p, m);
    return r;
  }
  CurveDivisor operator-(const CurveDivisor& o) const {
    CurveDivisor r = *this;
    for (const auto& [p, m] : o.coeffs) r.add(p, -m);
    return r;
  }
  bool operator==(const CurveDivisor& o) const { return coeffs == o.coeffs; }
  std::string str() const;
};

// The adelic subspace of collections integral up to poles bounded by the
// divisor. Any two of these are commensurable.
struct CurveLattice {
  CurveDivisor bound;
};

// [A|B] by per-point monomial counting.
long rel_dim(const CurveLattice& a, const CurveLattice& b);

struct CurveCohomology {
  long h0;
  long h1;
};

// H^0/H^1 on P^1 by explicit candidate bases and exact rank computations.
// The closed form lives in curve_cohomology_closed_form and stays an
// independent oracle.
CurveCohomology curve_cohomology(const FieldSpec& f, const CurveDivisor& d);
CurveCohomology curve_cohomology_closed_form(const CurveDivisor& d);

struct CurveRRReport {
  long chi1;
  long chi2;
  long reldim;  // [D2 | D1]
  bool pass;
};

// chi(D1) - chi(D2) against [D2|D1]; failure signals an implementation bug.
CurveRRReport abstract_rr_check(const FieldSpec& f, const CurveDivisor& d1, const CurveDivisor& d2);

struct CurveIdele {
  std::map<CurvePoint, LaurentSeries1> local_units;
};

// [aD|D] for the integral lattice D, where a is the idele times the monomial
// part; additive over points, multiplicative in the idele.
long idele_degree(const FieldSpec& f, const CurveIdele& a, const CurveDivisor& monomial_part);

// grammar: `3[0] - 2[inf] + 1[5]`
CurveDivisor parse_curve_divisor(const std::string& text, const FieldSpec& f);

}  // namespace adelic
