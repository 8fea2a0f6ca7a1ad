#pragma once

#include <string>

#include "delcheck/formula.hpp"
#include "delcheck/scene.hpp"

namespace delcheck {

// Parses a full scene (VARS / LAW / OBS / VALID? sections) and validates it.
Scene parse_scene(const std::string& text);

// Parses a bare formula; the whole input must be consumed.
Formula parse_formula(const std::string& text);

// Canonical text. parse(print(x)) is structurally equal to x; binary
// connectives are printed fully parenthesized, atoms and prefix forms bare.
std::string print_formula(const Formula& f);
std::string print_scene(const Scene& s);

}  // namespace delcheck
