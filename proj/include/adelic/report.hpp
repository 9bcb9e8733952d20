#pragma once

#include <string>
#include <vector>

namespace adelic {

// One verification record for a divisor class. elapsed_ms is the only field
// excluded from byte-stability guarantees.
struct VerifyReport {
  std::string surface;
  std::string field;
  std::string divisor;
  long f = 0;
  long th1_rhs = 0;
  long th2_rhs = 0;
  long chi_diff = 0;
  long self_intersection = 0;
  long k_dot_d = 0;
  bool lemma1_ok = false;
  bool dminusc_ok = false;
  bool rr_ok = false;
  bool pass = false;
  long elapsed_ms = 0;
};

struct IntersectReport {
  std::string surface;
  std::string field;
  std::string s_divisor;
  std::string t_divisor;
  std::vector<std::string> methods;
  std::vector<long> values;
  bool agree = false;
  long elapsed_ms = 0;
};

struct ReciprocitySample {
  std::string form;
  std::string curve_or_point;
  bool along_curve = true;
  bool zero_sum = false;
};

struct ReciprocityReport {
  std::string surface;
  std::string field;
  long seed = 0;
  long samples = 0;
  long passed = 0;
  std::vector<ReciprocitySample> failures;
  long elapsed_ms = 0;
};

struct BasisChangeReport {
  std::string surface;
  std::string field;
  std::string divisor;
  long seed = 0;
  long trials = 0;
  long matches = 0;
  long f_reference = 0;
};

std::string to_json(const VerifyReport& r);
std::string to_json(const std::vector<VerifyReport>& rs);
std::string to_json(const IntersectReport& r);
std::string to_json(const ReciprocityReport& r);
std::string to_markdown(const std::vector<VerifyReport>& rs);
std::string to_markdown(const IntersectReport& r);
std::string to_markdown(const ReciprocityReport& r);

}  // namespace adelic
