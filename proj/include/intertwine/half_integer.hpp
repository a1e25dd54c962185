#pragma once

#include <compare>
#include <cstdint>
#include <cstdlib>
#include <string>

namespace intertwine {

/// Exact element of ½ℤ, stored as its doubled integer value.
class HalfInt {
public:
    constexpr HalfInt() = default;

    static constexpr HalfInt from_twice(std::int64_t twice) { return HalfInt(twice); }
    static constexpr HalfInt from_int(std::int64_t value) { return HalfInt(2 * value); }

    constexpr std::int64_t twice() const { return twice_; }
    constexpr double value() const { return static_cast<double>(twice_) / 2.0; }
    constexpr bool is_integer() const { return twice_ % 2 == 0; }

    constexpr HalfInt operator-() const { return HalfInt(-twice_); }
    constexpr HalfInt& operator+=(HalfInt o) { twice_ += o.twice_; return *this; }
    constexpr HalfInt& operator-=(HalfInt o) { twice_ -= o.twice_; return *this; }

    friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return a += b; }
    friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return a -= b; }
    friend constexpr HalfInt operator*(std::int64_t s, HalfInt a) { return HalfInt(s * a.twice_); }
    friend constexpr auto operator<=>(HalfInt, HalfInt) = default;

    std::string to_string() const
    {
        if (is_integer()) return std::to_string(twice_ / 2);
        return std::to_string(twice_) + "/2";
    }

private:
    constexpr explicit HalfInt(std::int64_t twice) : twice_(twice) {}
    std::int64_t twice_ = 0;
};

}  // namespace intertwine
