#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace plram
{
    /// Runs one command line (args[0] is the program name). Exit codes: 0 on
    /// success, 2 for a negative mathematical outcome (not Ramsey, not found,
    /// unknown, invalid), 1 on errors. The last line on `out` is
    /// "RESULT: <token>".
    auto run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err) -> int;
}
