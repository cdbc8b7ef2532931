#pragma once

#include <algorithm>
#include <utility>

namespace melnikov {

/// Closed interval [lo, hi] over an exactly represented ordered field. No
/// outward rounding is done, so Scalar must be exact (Rational).
template <typename Scalar>
class Interval {
 public:
  Interval() : lo_(0), hi_(0) {}
  Interval(const Scalar& point) : lo_(point), hi_(point) {}  // NOLINT: implicit by intent
  Interval(Scalar lo, Scalar hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (hi_ < lo_) std::swap(lo_, hi_);
  }

  const Scalar& lo() const { return lo_; }
  const Scalar& hi() const { return hi_; }
  Scalar width() const { return hi_ - lo_; }
  Scalar mid() const { return (lo_ + hi_) / 2; }

  bool contains_zero() const { return lo_ <= Scalar(0) && hi_ >= Scalar(0); }
  /// +1 or -1 when the sign is certified, 0 otherwise.
  int certified_sign() const {
    if (lo_ > Scalar(0)) return 1;
    if (hi_ < Scalar(0)) return -1;
    return 0;
  }
  /// Largest absolute value attained.
  Scalar magnitude() const { return std::max(abs_(lo_), abs_(hi_)); }
  /// Smallest absolute value attained (zero when the interval straddles zero).
  Scalar mignitude() const { return contains_zero() ? Scalar(0) : std::min(abs_(lo_), abs_(hi_)); }

  friend Interval operator+(const Interval& a, const Interval& b) { return {a.lo_ + b.lo_, a.hi_ + b.hi_}; }
  friend Interval operator-(const Interval& a, const Interval& b) { return {a.lo_ - b.hi_, a.hi_ - b.lo_}; }
  friend Interval operator-(const Interval& a) { return {-a.hi_, -a.lo_}; }
  friend Interval operator*(const Interval& a, const Interval& b) {
    const Scalar p1 = a.lo_ * b.lo_, p2 = a.lo_ * b.hi_, p3 = a.hi_ * b.lo_, p4 = a.hi_ * b.hi_;
    return {std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4})};
  }
  Interval& operator+=(const Interval& o) { return *this = *this + o; }
  Interval& operator*=(const Interval& o) { return *this = *this * o; }

 private:
  static Scalar abs_(const Scalar& x) { return x < Scalar(0) ? -x : x; }

  Scalar lo_;
  Scalar hi_;
};

}  // namespace melnikov
