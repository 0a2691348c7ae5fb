#pragma once

// Command-line front end: generate, classify, verify, analyze, reconstruct,
// render, selftest. Exit codes: 0 success, 1 verification/check failure,
// 2 usage or input error.

namespace hexlimit {

int run_cli(int argc, const char* const* argv);

}  // namespace hexlimit
