#include "recom/votes.hpp"

#include <algorithm>
#include <numeric>

#include "recom/errors.hpp"

namespace recom {

Vote Vote::ratio(std::int64_t num, std::int64_t den) {
  if (den <= 0) fail(ErrorCode::arithmetic_overflow, "vote denominator must be positive");
  const std::int64_t g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Vote{num, den};
}

void VoteSum::add(const Vote& v) {
  auto it = std::lower_bound(buckets_.begin(), buckets_.end(), v.den,
                             [](const auto& b, std::int64_t den) { return b.first < den; });
  if (it != buckets_.end() && it->first == v.den) {
    if (__builtin_add_overflow(it->second, v.num, &it->second))
      fail(ErrorCode::arithmetic_overflow, "vote sum exceeds 64-bit range");
  } else {
    buckets_.insert(it, {v.den, v.num});
  }
}

void VoteSum::add(const VoteSum& other) {
  for (const auto& [den, num] : other.buckets_) add(Vote{num, den});
}

bool VoteSum::empty() const {
  return std::all_of(buckets_.begin(), buckets_.end(), [](const auto& b) { return b.second == 0; });
}

BigRat VoteSum::exact() const {
  BigRat total = 0;
  for (const auto& [den, num] : buckets_) total += BigRat(num, den);
  return total;
}

double VoteSum::value() const { return exact().convert_to<double>(); }

int VoteSum::compare(const VoteSum& other) const {
  // Common fast path: both sums are purely integral.
  const bool lhs_int = buckets_.size() <= 1 && (buckets_.empty() || buckets_[0].first == 1);
  const bool rhs_int =
      other.buckets_.size() <= 1 && (other.buckets_.empty() || other.buckets_[0].first == 1);
  if (lhs_int && rhs_int) {
    const std::int64_t a = buckets_.empty() ? 0 : buckets_[0].second;
    const std::int64_t b = other.buckets_.empty() ? 0 : other.buckets_[0].second;
    return a < b ? -1 : (a > b ? 1 : 0);
  }
  const BigRat a = exact();
  const BigRat b = other.exact();
  return a < b ? -1 : (a > b ? 1 : 0);
}

}  // namespace recom
