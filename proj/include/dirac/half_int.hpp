#pragma once

#include <compare>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace dirac {

/// Half-integer stored exactly as twice its value.
///
/// Total-angular-momentum labels (j, m_j) are half-odd integers; keeping the
/// doubled value in an int makes all label arithmetic exact and comparable.
class HalfInt {
  public:
    constexpr HalfInt() = default;
    constexpr explicit HalfInt(int twice) : twice_(twice) {}

    /// Build from an integer value (twice = 2*n).
    static constexpr HalfInt from_int(int n) { return HalfInt(2 * n); }
    /// Build n + 1/2.
    static constexpr HalfInt half_odd(int n) { return HalfInt(2 * n + 1); }

    constexpr int twice() const { return twice_; }
    constexpr double value() const { return 0.5 * twice_; }
    constexpr bool is_half_odd() const { return twice_ % 2 != 0; }
    constexpr bool is_integer() const { return twice_ % 2 == 0; }

    constexpr HalfInt operator-() const { return HalfInt(-twice_); }
    constexpr HalfInt operator+(HalfInt o) const { return HalfInt(twice_ + o.twice_); }
    constexpr HalfInt operator-(HalfInt o) const { return HalfInt(twice_ - o.twice_); }
    friend constexpr auto operator<=>(HalfInt, HalfInt) = default;

    constexpr HalfInt abs() const { return HalfInt(twice_ < 0 ? -twice_ : twice_); }

    /// m - 1/2 and m + 1/2 as plain ints; valid only for half-odd values.
    constexpr int minus_half() const { return (twice_ - 1) / 2; }
    constexpr int plus_half() const { return (twice_ + 1) / 2; }

    std::string str() const {
        if (is_integer()) return std::to_string(twice_ / 2);
        return std::to_string(twice_) + "/2";
    }

  private:
    int twice_ = 0;
};

} // namespace dirac
