// Copyright 2026 The Ridgeline Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

namespace ridgeline {

// Shortest decimal text that parses back to the same double. Infinities
// print as "inf" / "-inf", NaN as "nan".
std::string format_shortest(double value);

// Fixed-point with the given number of decimals; never emits "-0.000".
std::string format_fixed(double value, int decimals);

// Escapes the five XML special characters.
std::string xml_escape(std::string_view text);

}  // namespace ridgeline
