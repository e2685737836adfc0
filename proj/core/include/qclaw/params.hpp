#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qclaw {

// Exact rational, normalized with den > 0.  Query-complexity exponents stay
// tiny, so long long is plenty.
struct Rational {
  long long num = 0;
  long long den = 1;

  friend bool operator==(const Rational&, const Rational&) = default;
};

Rational make_rational(long long num, long long den);
bool rational_less(const Rational& a, const Rational& b);
double rational_value(const Rational& r);
std::string rational_string(const Rational& r);       // "3/7"
std::string rational_decimal4(const Rational& r);     // "0.4285", truncated

// Query exponent of the list-reuse multiclaw finder: (2^(l-1)-1)/(2^l-1).
Rational mclaw_exponent(int l);
// Query exponent of the recursive collision finder: (3^(l-1)-1)/(2*3^(l-1)).
Rational hsx_exponent(int l);

// Level-size schedule and hard query budget for the multiclaw finder.
// Schedule holds N_0 = N/(4 c_N) and N_i = N^((2^(l-i)-1)/(2^l-1)) for
// i = 1..l-1 as reals; capacities ceil(4 c_N N_i) for i = 1..l (with N_l = 1)
// are the integer loop bounds; qlimit = k * 169 * l * c_N^(3/2) * N^exponent,
// integerized as k * ceil(...) so that it scales exactly linearly in k.
struct MclawParams {
  int l = 2;
  std::uint64_t range_size = 0;  // N
  double c_n = 1.0;
  int k = 2;
  std::vector<double> schedule;          // N_0 .. N_{l-1}
  std::vector<std::uint64_t> capacities; // levels 1 .. l
  std::uint64_t qlimit = 0;

  static MclawParams build(int l, std::uint64_t range_size, double c_n, int k);
};

// N^(num/den) with exact handling of power-of-two N.
double pow_fraction(std::uint64_t n, long long num, long long den);

// log2 of the query budget, for ranges far beyond anything materializable
// (hash-function scale).  Equals log2(k*169*l*c_n^1.5) + log2_range*exponent.
double qlimit_log2(int l, double log2_range, double c_n, int k);

// ceil(log2(budget)) for l = l_min..l_max at range 2^512, k = 2, c_N = 1,
// the concrete hash-function cost row.
std::vector<long long> sha3_bound_table(int l_min = 2, int l_max = 5);

struct BoundRow {
  int l;
  Rational ours;
  Rational hsx;
};
// Exponent table for both algorithm families, l = 2..l_max.
std::vector<BoundRow> bound_table(int l_max);

}  // namespace qclaw
