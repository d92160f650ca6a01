#pragma once

namespace slapmap {

// Exit codes: 0 success/match, 1 input error, 2 analysis mismatch,
// 3 non-expanding input.
int run_cli(int argc, char** argv);

}  // namespace slapmap
