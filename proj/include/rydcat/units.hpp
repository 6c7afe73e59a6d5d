#pragma once

#include <cmath>
#include <numbers>

namespace rydcat {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// A frequency quoted as X/2pi in MHz, stored alongside its angular value
/// in rad/us. Time is always microseconds, so MHz * 2pi = rad/us.
class Frequency {
public:
  constexpr Frequency() = default;

  static constexpr Frequency from_mhz(double cyclic) { return Frequency(cyclic); }
  static constexpr Frequency from_angular(double rad_per_us) {
    return Frequency(rad_per_us / kTwoPi);
  }

  constexpr double mhz() const { return cyclic_; }
  constexpr double angular() const { return cyclic_ * kTwoPi; }

  constexpr Frequency operator*(double s) const { return Frequency(cyclic_ * s); }
  constexpr Frequency operator/(double s) const { return Frequency(cyclic_ / s); }
  constexpr Frequency operator+(Frequency o) const { return Frequency(cyclic_ + o.cyclic_); }
  constexpr Frequency operator-(Frequency o) const { return Frequency(cyclic_ - o.cyclic_); }
  constexpr bool operator==(const Frequency&) const = default;

private:
  constexpr explicit Frequency(double cyclic) : cyclic_(cyclic) {}
  double cyclic_ = 0.0;
};

namespace literals {
constexpr Frequency operator""_MHz(long double v) {
  return Frequency::from_mhz(static_cast<double>(v));
}
constexpr Frequency operator""_MHz(unsigned long long v) {
  return Frequency::from_mhz(static_cast<double>(v));
}
} // namespace literals

} // namespace rydcat
