#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "adelic/series.hpp"

namespace adelic {

// Exact Laurent polynomial in two variables (x, y) over the base field.
// Negative exponents are allowed; evaluation at series arguments inverts
// as needed.
class BivarPoly {
 public:
  explicit BivarPoly(FieldSpec f) : field_(f) {}

  static BivarPoly zero(const FieldSpec& f) { return BivarPoly(f); }
  static BivarPoly constant(const FieldSpec& f, const Scalar& c);
  static BivarPoly monomial(const FieldSpec& f, long i, long j, const Scalar& c);
  static BivarPoly var_x(const FieldSpec& f) { return monomial(f, 1, 0, Scalar::one(f)); }
  static BivarPoly var_y(const FieldSpec& f) { return monomial(f, 0, 1, Scalar::one(f)); }

  const FieldSpec& field() const { return field_; }
  const std::map<std::pair<long, long>, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }

  void add_term(long i, long j, const Scalar& c);

  BivarPoly operator-() const;
  BivarPoly operator+(const BivarPoly& o) const;
  BivarPoly operator-(const BivarPoly& o) const;
  BivarPoly operator*(const BivarPoly& o) const;
  BivarPoly pow(long e) const;  // e >= 0
  BivarPoly scaled(const Scalar& c) const;

  BivarPoly dx() const;
  BivarPoly dy() const;

  Scalar eval_point(const Scalar& a, const Scalar& b) const;
  IterLaurent eval(const IterLaurent& x, const IterLaurent& y, long t_rel, long u_rel) const;
  LaurentSeries1 eval1(const LaurentSeries1& x, const LaurentSeries1& y, long rel) const;

  long min_deg_x() const;
  long min_deg_y() const;
  long max_deg_x() const;
  long max_deg_y() const;
  long total_degree() const;  // of the polynomial part, for curve degree bookkeeping

  std::string str() const;
  bool operator==(const BivarPoly& o) const { return terms_ == o.terms_; }

 private:
  FieldSpec field_;
  std::map<std::pair<long, long>, Scalar> terms_;
};

struct BivarRational {
  BivarPoly num;
  BivarPoly den;

  static BivarRational of(const BivarPoly& p);
  static BivarRational one(const FieldSpec& f) { return of(BivarPoly::constant(f, Scalar::one(f))); }

  BivarRational operator+(const BivarRational& o) const;
  BivarRational operator-(const BivarRational& o) const;
  BivarRational operator*(const BivarRational& o) const;
  BivarRational operator/(const BivarRational& o) const;
  BivarRational pow(long e) const;

  BivarRational dx() const;
  BivarRational dy() const;

  bool is_zero() const { return num.is_zero(); }
  IterLaurent eval(const IterLaurent& x, const IterLaurent& y, long t_rel, long u_rel) const;
  std::string str() const;
};

// Univariate exact polynomial; used for pole location on curves.
class UniPoly {
 public:
  explicit UniPoly(FieldSpec f) : field_(f) {}
  static UniPoly from_coeffs(const FieldSpec& f, const std::vector<Scalar>& asc);

  void add_term(long e, const Scalar& c);
  bool is_zero() const { return c_.empty(); }
  long degree() const;
  long low_degree() const;
  const std::map<long, Scalar>& terms() const { return c_; }
  Scalar eval(const Scalar& a) const;
  UniPoly divide_linear(const Scalar& root) const;  // exact deflation by (x - root)

  // All roots in the base field, with multiplicity collapsed; `complete` is
  // true when the non-root part has been certified to have no further roots
  // in the field.
  struct Roots {
    std::vector<Scalar> values;
    bool complete;
  };
  Roots roots() const;

 private:
  FieldSpec field_;
  std::map<long, Scalar> c_;
};

// Power-series branch of a smooth curve point: solves f(a0 + u, B) = t with
// B(0,0) = b0, where f is the defining polynomial and df/dy(a0,b0) != 0.
// The result is certified to total order `order` in (u, t).
IterLaurent hensel_branch(const BivarPoly& f, const Scalar& a0, const Scalar& b0, long order);

}  // namespace adelic
