#pragma once

#include <string>

#include "hexlimit/marking.hpp"
#include "hexlimit/reconstruct.hpp"

// Patch text format (v1).
//
//   #hexlimit-patch v1
//   #q=<q-spec> K=<int> R=<int> freebits=<spec>
//   <m>\t<n>\t<parity>\t<stripe>\t<shift>\t<split>\t<status>
//   ...
//
// Records are sorted by (m, n). Bits are 0/1; undetermined tiles carry '-'
// for every bit (and for the stripe when it is unknown too). Status is
// `Determined` or `Undetermined:<reason>`. The parity-only variant keeps both
// header lines and writes records `<m>\t<n>\t<parity>`.

namespace hexlimit {

inline constexpr const char* kPatchMagic = "#hexlimit-patch v1";

std::string format_patch(const Patch& patch);
Patch parse_patch(const std::string& text);

std::string format_parity_patch(const Patch& patch);
// Accepts both variants (a full file is reduced to its parity column).
ParityPatch parse_parity_patch(const std::string& text);

}  // namespace hexlimit
