#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

namespace recom {

using BigRat = boost::multiprecision::cpp_rational;

// Exact vote count. Raw election data is integral (den == 1); prorating
// precinct totals down to blocks produces genuine fractions, which are kept
// exact so column-sum conservation and seat comparisons never hinge on
// floating-point rounding. Always stored reduced with den >= 1.
struct Vote {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Vote of(std::int64_t whole) { return Vote{whole, 1}; }
  // Reduced num/den; den must be positive. Throws ArithmeticOverflow if the
  // reduction cannot be represented (never happens for reachable inputs).
  static Vote ratio(std::int64_t num, std::int64_t den);

  bool is_integer() const { return den == 1; }
  bool negative() const { return num < 0; }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  BigRat exact() const { return BigRat(num, den); }

  friend bool operator==(const Vote&, const Vote&) = default;
};

// Exact running sum of Vote values. Per-node additions stay in int64 buckets
// keyed by denominator; the arbitrary-precision combine across denominators is
// deferred to exact()/compare(), paid once per aggregate instead of per node.
class VoteSum {
 public:
  void add(const Vote& v);
  void add(const VoteSum& other);
  void clear() { buckets_.clear(); }
  bool empty() const;  // true iff the sum is exactly zero

  BigRat exact() const;
  double value() const;

  // Three-way exact comparison: -1, 0, +1 as *this <, ==, > other.
  int compare(const VoteSum& other) const;

 private:
  // (denominator, numerator-sum) pairs, sorted by denominator, few entries.
  std::vector<std::pair<std::int64_t, std::int64_t>> buckets_;
};

}  // namespace recom
