#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "adelic/errors.hpp"

namespace adelic {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

enum class FieldKind { prime_field, rationals };

struct FieldSpec {
  FieldKind kind = FieldKind::prime_field;
  std::uint32_t p = 101;

  static FieldSpec fp(std::uint32_t prime);
  static FieldSpec rationals();
  // "fp:<p>" or "q"
  static FieldSpec parse(const std::string& text);

  bool operator==(const FieldSpec&) const = default;
  std::string name() const;
};

// An exact element of the base field: a residue mod p stored in [0, p),
// or a reduced fraction of big integers. No floating point anywhere.
class Scalar {
 public:
  static Scalar zero(const FieldSpec& f);
  static Scalar one(const FieldSpec& f);
  static Scalar from_int(const FieldSpec& f, long long n);
  static Scalar from_fraction(const FieldSpec& f, long long num, long long den);
  static Scalar from_rational(const FieldSpec& f, const Rational& r);
  // value as a rational; only for the rationals field
  const Rational& rational() const;

  const FieldSpec& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar inv() const;
  Scalar pow(long e) const;

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }
  // deterministic strict order (residue order / rational order); map keys only
  bool operator<(const Scalar& o) const;

  std::string str() const;

 private:
  Scalar(FieldSpec f) : field_(f) {}
  void check(const Scalar& o) const;

  FieldSpec field_;
  std::uint64_t fp_ = 0;  // value when prime_field
  Rational rat_;          // value when rationals
};

bool is_prime(std::uint32_t n);

}  // namespace adelic
