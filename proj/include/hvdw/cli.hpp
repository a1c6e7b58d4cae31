#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hvdw/interaction.hpp"

namespace hvdw {

// Exit codes: 0 success, 2 usage error, 3 numerical/search failure,
// 4 reproduction-tolerance breach.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Pair syntax: <n><L>:<n'><L'>[:m=<int>][:sym=+|-], e.g. 12D:1S or 2S:1S:sym=-.
PairSpec parse_pair(const std::string& text);

} // namespace hvdw
