#pragma once

#include <ostream>

// End-to-end acceptance suite: twelve checks covering parity anchors, exact
// arithmetic identities, formula/pipeline equivalence on random parameters,
// rule verification with mutation sensitivity, the singularity taxonomy,
// density and periodicity statistics, reconstruction roundtrips, the
// aperiodicity smoke test, and byte-determinism of emitted artifacts.

namespace hexlimit {

// Runs every check, printing one PASS/FAIL line per criterion to `os`.
// Returns the number of failed criteria (0 = all green).
int run_acceptance(std::ostream& os);

}  // namespace hexlimit
