#include "adelic/field.hpp"

namespace adelic {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FieldSpec FieldSpec::fp(std::uint32_t prime) {
  if (!is_prime(prime)) throw Error("modulus " + std::to_string(prime) + " is not prime");
  FieldSpec f;
  f.kind = FieldKind::prime_field;
  f.p = prime;
  return f;
}

FieldSpec FieldSpec::rationals() {
  FieldSpec f;
  f.kind = FieldKind::rationals;
  f.p = 0;
  return f;
}

FieldSpec FieldSpec::parse(const std::string& text) {
  if (text == "q" || text == "Q") return rationals();
  if (text.rfind("fp:", 0) == 0) {
    long v = std::stol(text.substr(3));
    if (v < 2) throw Error("bad field spec: " + text);
    return fp(static_cast<std::uint32_t>(v));
  }
  throw Error("bad field spec: " + text + " (expected fp:<p> or q)");
}

std::string FieldSpec::name() const {
  return kind == FieldKind::rationals ? "q" : ("fp:" + std::to_string(p));
}

Scalar Scalar::zero(const FieldSpec& f) { return Scalar(f); }

Scalar Scalar::one(const FieldSpec& f) { return from_int(f, 1); }

Scalar Scalar::from_int(const FieldSpec& f, long long n) {
  Scalar s(f);
  if (f.kind == FieldKind::prime_field) {
    long long r = n % static_cast<long long>(f.p);
    if (r < 0) r += f.p;
    s.fp_ = static_cast<std::uint64_t>(r);
  } else {
    s.rat_ = n;
  }
  return s;
}

Scalar Scalar::from_fraction(const FieldSpec& f, long long num, long long den) {
  if (den == 0) throw ZeroDenominator("fraction with zero denominator");
  return from_int(f, num) / from_int(f, den);
}

Scalar Scalar::from_rational(const FieldSpec& f, const Rational& r) {
  Scalar s(f);
  if (f.kind == FieldKind::rationals) {
    s.rat_ = r;
    return s;
  }
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);
  BigInt p(f.p);
  BigInt nm = num % p;
  if (nm < 0) nm += p;
  BigInt dm = den % p;
  if (dm < 0) dm += p;
  Scalar sn(f), sd(f);
  sn.fp_ = nm.convert_to<std::uint64_t>();
  sd.fp_ = dm.convert_to<std::uint64_t>();
  return sn / sd;
}

const Rational& Scalar::rational() const {
  if (field_.kind != FieldKind::rationals) throw FieldMismatch("rational() on a prime-field scalar");
  return rat_;
}

void Scalar::check(const Scalar& o) const {
  if (!(field_ == o.field_)) throw FieldMismatch("scalar fields differ: " + field_.name() + " vs " + o.field_.name());
}

bool Scalar::is_zero() const {
  return field_.kind == FieldKind::prime_field ? fp_ == 0 : rat_ == 0;
}

bool Scalar::is_one() const {
  return field_.kind == FieldKind::prime_field ? fp_ == 1 : rat_ == 1;
}

Scalar Scalar::operator-() const {
  Scalar r(field_);
  if (field_.kind == FieldKind::prime_field)
    r.fp_ = fp_ == 0 ? 0 : field_.p - fp_;
  else
    r.rat_ = -rat_;
  return r;
}

Scalar Scalar::operator+(const Scalar& o) const {
  check(o);
  Scalar r(field_);
  if (field_.kind == FieldKind::prime_field) {
    r.fp_ = fp_ + o.fp_;
    if (r.fp_ >= field_.p) r.fp_ -= field_.p;
  } else {
    r.rat_ = rat_ + o.rat_;
  }
  return r;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  check(o);
  Scalar r(field_);
  if (field_.kind == FieldKind::prime_field)
    r.fp_ = (fp_ * o.fp_) % field_.p;  // p < 2^31 keeps the product in range
  else
    r.rat_ = rat_ * o.rat_;
  return r;
}

Scalar Scalar::inv() const {
  if (is_zero()) throw ZeroDenominator("inverse of zero");
  Scalar r(field_);
  if (field_.kind == FieldKind::prime_field) {
    // extended Euclid
    long long a = static_cast<long long>(fp_), m = field_.p;
    long long x0 = 0, x1 = 1, b = m;
    while (a > 1) {
      long long q = a / b;
      long long t = b;
      b = a % b;
      a = t;
      t = x0;
      x0 = x1 - q * x0;
      x1 = t;
    }
    if (x1 < 0) x1 += m;
    r.fp_ = static_cast<std::uint64_t>(x1);
  } else {
    r.rat_ = 1 / rat_;
  }
  return r;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inv(); }

Scalar Scalar::pow(long e) const {
  Scalar base = e < 0 ? inv() : *this;
  unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
  Scalar acc = one(field_);
  while (k) {
    if (k & 1) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

bool Scalar::operator==(const Scalar& o) const {
  if (!(field_ == o.field_)) return false;
  return field_.kind == FieldKind::prime_field ? fp_ == o.fp_ : rat_ == o.rat_;
}

bool Scalar::operator<(const Scalar& o) const {
  check(o);
  return field_.kind == FieldKind::prime_field ? fp_ < o.fp_ : rat_ < o.rat_;
}

std::string Scalar::str() const {
  if (field_.kind == FieldKind::prime_field) return std::to_string(fp_);
  return rat_.str();
}

}  // namespace adelic
