#pragma once

namespace soilcolor::cli {

// Exit codes: 0 success, 1 runtime/data error, 2 usage error.
int run(int argc, char** argv);

}  // namespace soilcolor::cli
