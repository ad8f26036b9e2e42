#ifndef RATSYM_PARSE_HPP
#define RATSYM_PARSE_HPP

#include "ratsym/options.hpp"
#include "ratsym/ratfunc.hpp"

#include <string>

namespace ratsym {

// Expressions over z, integer literals, i, sqrt(d) with integer d, the
// operators + - * / ^ (integer exponents) and parentheses; whitespace
// insensitive.  Radicals are adjoined to `tower` as they appear.
RatFunc parse_expression(const std::string& text, Tower& tower,
                         const EngineOptions& opt = {});

// Parse a point: any constant expression, or "inf".
SpherePoint parse_point(const std::string& text, Tower& tower,
                        const EngineOptions& opt = {});

} // namespace ratsym

#endif
