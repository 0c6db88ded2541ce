#pragma once

namespace schemata::cli {

// Exit codes: 0 success, 1 usage or validation error, 2 budget exceeded.
int run(int argc, char** argv);

}  // namespace schemata::cli
