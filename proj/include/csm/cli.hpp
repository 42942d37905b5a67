#pragma once

namespace csm {

// Exit codes: 0 success, 2 parse/validation error, 3 verification FAIL,
// 4 timeout-uncompleted run.
int cli_main(int argc, const char* const* argv);

}  // namespace csm
