// Copyright 2026 The lgsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace lgsim {

/**
 * Exact half-integer stored as twice its value.
 *
 * j = 5/2 is HalfInt{5}; m = -1 is HalfInt{-2}. All arithmetic stays in
 * integers so parity signs (-1)^(j-m) never see floating point.
 */
class HalfInt {
public:
    constexpr HalfInt() = default;
    constexpr explicit HalfInt(int twice_value) noexcept : twice_(twice_value) {}

    static constexpr HalfInt from_int(int value) noexcept { return HalfInt{2 * value}; }

    /// Parses "5/2", "-3/2", "2" or "-1". Throws InputError on anything else,
    /// including fractions whose denominator is not 2 ("3/4", "4/2").
    static HalfInt parse(std::string_view text);

    [[nodiscard]] constexpr int twice() const noexcept { return twice_; }
    [[nodiscard]] constexpr bool is_integer() const noexcept { return twice_ % 2 == 0; }
    [[nodiscard]] constexpr double value() const noexcept { return 0.5 * twice_; }

    /// Integer value; only meaningful when is_integer().
    [[nodiscard]] constexpr int as_integer() const noexcept { return twice_ / 2; }

    constexpr HalfInt operator-() const noexcept { return HalfInt{-twice_}; }
    constexpr HalfInt operator+(HalfInt o) const noexcept { return HalfInt{twice_ + o.twice_}; }
    constexpr HalfInt operator-(HalfInt o) const noexcept { return HalfInt{twice_ - o.twice_}; }

    constexpr auto operator<=>(const HalfInt&) const noexcept = default;

    /// "5/2" for half-odd values, "2" for integers.
    [[nodiscard]] std::string str() const;

private:
    int twice_ = 0;
};

}  // namespace lgsim
