#pragma once

#include <iosfwd>

namespace gbc {

// Full verification battery across the algebra, geometry, grid and Monte
// Carlo layers. Prints one "A<k> pass/fail" line per criterion and returns
// the number of failures.
int run_acceptance(std::ostream& out);

}  // namespace gbc
