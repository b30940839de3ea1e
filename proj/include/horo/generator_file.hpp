#pragma once

#include <iosfwd>
#include <string>

#include "horo/groups.hpp"

namespace horo {

// One generator per line, `name kind entries...`:
//
//   name psl    a b c d                  trivial transverse factor
//   name affine a b c d  m k             y -> m y + k
//   name so3    a b c d  w x y z         unit quaternion (normalized on read)
//   name circle a b c d [a2 b2 c2 d2]    boundary factor; omitted = diagonal
//
// Blank lines and text after '#' are ignored. All generators must share a
// kind. Errors are ParseError with the offending line number.
GeneratedGroup parse_generators(std::istream& in);
GeneratedGroup parse_generators_file(const std::string& path);

}  // namespace horo
