#include <cctype>

#include "adelic/series.hpp"

namespace adelic {

namespace {

struct Cursor {
  const std::string& s;
  std::size_t i = 0;

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
  char peek() {
    skip();
    return i < s.size() ? s[i] : '\0';
  }
  bool done() {
    skip();
    return i >= s.size();
  }
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, i); }

  long integer() {
    skip();
    std::size_t start = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    std::size_t digits = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == digits) fail("expected integer");
    return std::stol(s.substr(start, i - start));
  }

  bool ident(const std::string& name) {
    skip();
    if (s.compare(i, name.size(), name) == 0) {
      i += name.size();
      return true;
    }
    return false;
  }
};

}  // namespace

IterLaurent parse_series(const std::string& text, const FieldSpec& f, const std::string& inner,
                         const std::string& outer) {
  Cursor c{text};
  IterLaurent result = IterLaurent::zero(f, inner, outer);
  bool any = false;
  while (!c.done() && c.peek() != '@') {
    int sign = 1;
    if (c.eat('-'))
      sign = -1;
    else if (c.eat('+'))
      sign = 1;
    else if (any)
      c.fail("expected + or - between terms");

    Scalar coeff = Scalar::from_int(f, sign);
    long u_exp = 0, t_exp = 0;
    bool saw_factor = false;
    for (;;) {
      char p = c.peek();
      if (std::isdigit(static_cast<unsigned char>(p))) {
        long num = c.integer();
        if (c.eat('/')) {
          long den = c.integer();
          coeff = coeff * Scalar::from_fraction(f, num, den);
        } else {
          coeff = coeff * Scalar::from_int(f, num);
        }
        saw_factor = true;
      } else if (c.ident(inner)) {
        u_exp += c.eat('^') ? c.integer() : 1;
        saw_factor = true;
      } else if (c.ident(outer)) {
        t_exp += c.eat('^') ? c.integer() : 1;
        saw_factor = true;
      } else {
        break;
      }
      if (!c.eat('*')) break;
    }
    if (!saw_factor) c.fail("expected a term");
    result = result + IterLaurent::monomial(f, u_exp, t_exp, coeff, inner, outer);
    any = true;
  }
  if (c.eat('@')) {
    if (!c.eat('[')) c.fail("expected [ after @");
    long tlo = c.integer();
    if (!c.eat('.') || !c.eat('.')) c.fail("expected .. in window");
    long thi = c.integer();
    Window uw{0, Window::kInf};
    if (c.eat(';')) {
      uw.lo = c.integer();
      if (!c.eat('.') || !c.eat('.')) c.fail("expected .. in window");
      uw.hi = c.integer();
    }
    if (!c.eat(']')) c.fail("expected ] closing window");
    if (!c.done()) c.fail("trailing input after window");
    IterLaurent windowed(f, inner, outer, Window{tlo, thi});
    for (const auto& [j, s] : result.levels()) {
      if (j > thi) continue;
      LaurentSeries1 lvl(f, inner, uw);
      for (const auto& [e, sc] : s.terms()) {
        if (e > uw.hi) continue;
        lvl.set(e, sc);
      }
      windowed.set_level(j, lvl);
    }
    // levels inside the t-window with no stored terms still carry the u-window
    for (long j = std::max(tlo, result.t_window().lo); j <= thi; ++j)
      if (!result.levels().count(j)) windowed.set_level(j, LaurentSeries1(f, inner, uw));
    return windowed;
  }
  if (!c.done()) c.fail("unexpected trailing input");
  return result;
}

}  // namespace adelic
