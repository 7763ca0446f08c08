#pragma once

// Text format for formed algebras:
//
//   <ring>, <rank>, <degree>
//   unit: s_1; s_2; ...
//   labels: l_1 l_2 ...
//   tag: <tag>
//   param: <key>=<value>          (zero or more)
//   nondegenerate: yes|no
//   <i> <j> <k> <scalar>          (0-based nonzero structure constants)
//   form: <polynomial in x1..xn>

#include <string>
#include <string_view>

#include "compforms/form.hpp"

namespace compforms {

std::string write_algebra(const FormedAlgebra& F);
/// Throws std::invalid_argument on malformed input.
FormedAlgebra read_algebra(std::string_view text);

}  // namespace compforms
