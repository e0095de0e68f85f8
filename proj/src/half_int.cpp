// Copyright 2026 The lgsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "lgsim/half_int.hpp"

#include <charconv>
#include <climits>

#include "lgsim/errors.hpp"

namespace lgsim {

namespace {

int parse_int(std::string_view text, std::string_view whole) {
    int value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (!text.empty() && *first == '+') {
        ++first;
    }
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (first == last || ec != std::errc{} || ptr != last) {
        throw InputError("malformed half-integer '" + std::string(whole) + "'");
    }
    return value;
}

}  // namespace

HalfInt HalfInt::parse(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        const int v = parse_int(text, text);
        if (v > INT_MAX / 2 || v < INT_MIN / 2) {
            throw InputError("half-integer '" + std::string(text) + "' out of range");
        }
        return from_int(v);
    }
    const int numerator = parse_int(text.substr(0, slash), text);
    const int denominator = parse_int(text.substr(slash + 1), text);
    if (denominator != 2 || numerator % 2 == 0) {
        throw InputError("malformed half-integer '" + std::string(text) +
                         "': expected n/2 with n odd, or an integer");
    }
    return HalfInt{numerator};
}

std::string HalfInt::str() const {
    if (is_integer()) {
        return std::to_string(twice_ / 2);
    }
    return std::to_string(twice_) + "/2";
}

}  // namespace lgsim
