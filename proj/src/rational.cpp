#include "caploc/rational.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace caploc {

Rational make_rational(long long numerator, long long denominator) {
  if (denominator == 0) throw std::invalid_argument("zero denominator");
  static_assert(sizeof(long) == sizeof(long long));
  Rational r{mpz_class(static_cast<long>(numerator)),
             mpz_class(static_cast<long>(denominator))};
  r.canonicalize();
  return r;
}

namespace {

bool valid_integer_token(std::string_view s, bool allow_sign) {
  if (s.empty()) return false;
  size_t start = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) start = 1;
  if (start == s.size()) return false;
  for (size_t i = start; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den =
      slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!valid_integer_token(num, true) || !valid_integer_token(den, false)) {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  std::string num_str(num);
  if (num_str[0] == '+') num_str.erase(0, 1);
  mpz_class n(num_str), d{std::string(den)};
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_decimal(const Rational& value, int digits) {
  // mpf keeps enough precision for the advisory rendering of large values.
  mpf_class f(value, 256);
  char buffer[128];
  gmp_snprintf(buffer, sizeof buffer, "%.*Fg", digits, f.get_mpf_t());
  return buffer;
}

BigInt floor_of(const Rational& value) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q;
}

bool is_integer(const Rational& value) { return value.get_den() == 1; }

bool strictly_between_zero_and_one(const Rational& value) {
  return value > 0 && value < 1;
}

long long to_int64(const Rational& value) {
  if (!is_integer(value) || !value.get_num().fits_slong_p()) {
    throw std::overflow_error("rational " + to_string(value) + " is not a small integer");
  }
  return value.get_num().get_si();
}

}  // namespace caploc
