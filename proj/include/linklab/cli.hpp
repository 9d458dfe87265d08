#ifndef LINKLAB_CLI_HPP
#define LINKLAB_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace linklab {

// Runs one linklab command; args excludes the program name.  File arguments
// named "-" read from `in`.  Exit codes: 0 success, 2 instance outside the
// solver's guarantees, 3 negative result (configuration proven not
// linkable, certificate invalid, or a reproduction row failed), 4 undecided
// within the search budget, 64 malformed input or usage, 70 internal fault.
int run_cli(const std::vector<std::string>& args, std::istream& in,
            std::ostream& out, std::ostream& err);

} // namespace linklab

#endif
