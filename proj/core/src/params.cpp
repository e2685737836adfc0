#include "qclaw/params.hpp"

#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qclaw {

Rational make_rational(long long num, long long den) {
  if (den == 0) throw std::invalid_argument("rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const long long g = std::gcd(num < 0 ? -num : num, den);
  return {g ? num / g : num, g ? den / g : den};
}

bool rational_less(const Rational& a, const Rational& b) {
  return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
}

double rational_value(const Rational& r) {
  return static_cast<double>(r.num) / static_cast<double>(r.den);
}

std::string rational_string(const Rational& r) {
  return std::to_string(r.num) + "/" + std::to_string(r.den);
}

std::string rational_decimal4(const Rational& r) {
  if (r.num < 0 || r.num > r.den)
    throw std::invalid_argument("rational_decimal4: expects a value in [0, 1]");
  // Truncated, not rounded: 3/7 prints as 0.4285.
  const long long scaled = r.num * 10000 / r.den;
  std::string digits = std::to_string(scaled % 10000);
  digits.insert(0, 4 - digits.size(), '0');
  return std::to_string(scaled / 10000) + "." + digits;
}

namespace {

constexpr int kMaxExponentL = 20;  // keeps 3^(l-1) comfortably in long long

void check_l(int l) {
  if (l < 2) throw std::invalid_argument("exponent: l must be at least 2");
  if (l > kMaxExponentL) throw std::invalid_argument("exponent: l too large");
}

}  // namespace

Rational mclaw_exponent(int l) {
  check_l(l);
  const long long p = 1LL << (l - 1);
  return make_rational(p - 1, 2 * p - 1);
}

Rational hsx_exponent(int l) {
  check_l(l);
  long long p = 1;
  for (int i = 1; i < l; ++i) p *= 3;
  return make_rational(p - 1, 2 * p);
}

double pow_fraction(std::uint64_t n, long long num, long long den) {
  if (n == 0) throw std::invalid_argument("pow_fraction: n must be positive");
  double log2n;
  if (std::has_single_bit(n)) {
    log2n = static_cast<double>(std::countr_zero(n));
  } else {
    log2n = std::log2(static_cast<double>(n));
  }
  return std::exp2(log2n * static_cast<double>(num) / static_cast<double>(den));
}

MclawParams MclawParams::build(int l, std::uint64_t range_size, double c_n, int k) {
  check_l(l);
  if (range_size < 2) throw std::invalid_argument("params: range size must be at least 2");
  if (c_n < 1.0) throw std::invalid_argument("params: c_N must be at least 1");
  if (k < 2) throw std::invalid_argument("params: k must be at least 2");

  MclawParams p;
  p.l = l;
  p.range_size = range_size;
  p.c_n = c_n;
  p.k = k;

  const long long den = (1LL << l) - 1;
  p.schedule.push_back(static_cast<double>(range_size) / (4.0 * c_n));
  for (int i = 1; i < l; ++i) {
    const long long num = (1LL << (l - i)) - 1;
    p.schedule.push_back(pow_fraction(range_size, num, den));
  }
  for (int i = 1; i <= l; ++i) {
    const double n_i = i < l ? p.schedule[i] : 1.0;
    p.capacities.push_back(static_cast<std::uint64_t>(std::ceil(4.0 * c_n * n_i)));
  }
  if (p.capacities.front() > range_size)
    throw std::invalid_argument(
        "params: c_N too large, level-1 capacity exceeds the range size");

  const Rational e = mclaw_exponent(l);
  const double base = 169.0 * l * std::pow(c_n, 1.5) *
                      pow_fraction(range_size, e.num, e.den);
  p.qlimit = static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(std::ceil(base));
  return p;
}

double qlimit_log2(int l, double log2_range, double c_n, int k) {
  check_l(l);
  if (k < 2) throw std::invalid_argument("qlimit_log2: k must be at least 2");
  if (c_n < 1.0) throw std::invalid_argument("qlimit_log2: c_N must be at least 1");
  const Rational e = mclaw_exponent(l);
  return std::log2(static_cast<double>(k) * 169.0 * l * std::pow(c_n, 1.5)) +
         log2_range * rational_value(e);
}

std::vector<long long> sha3_bound_table(int l_min, int l_max) {
  if (l_min < 2 || l_max < l_min) throw std::invalid_argument("sha3_bound_table: bad range");
  std::vector<long long> out;
  for (int l = l_min; l <= l_max; ++l)
    out.push_back(static_cast<long long>(std::ceil(qlimit_log2(l, 512.0, 1.0, 2))));
  return out;
}

std::vector<BoundRow> bound_table(int l_max) {
  if (l_max < 2) throw std::invalid_argument("bound_table: l_max must be at least 2");
  std::vector<BoundRow> rows;
  for (int l = 2; l <= l_max; ++l) rows.push_back({l, mclaw_exponent(l), hsx_exponent(l)});
  return rows;
}

}  // namespace qclaw
