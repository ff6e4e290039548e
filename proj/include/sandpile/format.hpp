#pragma once

#include "sandpile/integer.hpp"

#include <string>
#include <vector>

namespace sandpile {

std::string to_csv(const Vec& v);
// Throws ValidationError on malformed input.
Vec parse_csv(const std::string& text);

// "1021" when every entry lies in [0, 9], otherwise comma-separated.
std::string digits(const Vec& v);

std::string to_string(const Integer& x);

}  // namespace sandpile
