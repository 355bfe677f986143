#ifndef SAW_CLI_HPP
#define SAW_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace saw {

// Batch front door.  Exit codes: 0 ok, 1 validation failure, 2 guard/radius
// errors, 3 pipeline mismatch (verify), 4 I/O and usage errors.
int run(const std::vector<std::string>& argv, std::ostream& out,
        std::ostream& err);

} // namespace saw

#endif
