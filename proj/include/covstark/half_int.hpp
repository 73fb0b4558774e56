#pragma once

#include <compare>
#include <cstdlib>
#include <string>

namespace covstark {

/// Exact integer or half-integer value, stored as twice the value.
class HalfInt {
public:
    constexpr HalfInt() = default;

    static constexpr HalfInt from_twice(int twice) { HalfInt h; h.twice_ = twice; return h; }
    static constexpr HalfInt from_int(int v) { return from_twice(2 * v); }

    constexpr int twice() const { return twice_; }
    constexpr double value() const { return 0.5 * twice_; }
    constexpr bool is_integer() const { return twice_ % 2 == 0; }
    constexpr bool is_half_odd() const { return twice_ % 2 != 0; }

    constexpr HalfInt operator-() const { return from_twice(-twice_); }
    constexpr HalfInt operator+(HalfInt o) const { return from_twice(twice_ + o.twice_); }
    constexpr HalfInt operator-(HalfInt o) const { return from_twice(twice_ - o.twice_); }

    constexpr auto operator<=>(const HalfInt&) const = default;

    std::string str() const {
        if (is_integer()) return std::to_string(twice_ / 2);
        return std::to_string(twice_) + "/2";
    }

private:
    int twice_ = 0;
};

constexpr HalfInt half(int twice) { return HalfInt::from_twice(twice); }

} // namespace covstark
