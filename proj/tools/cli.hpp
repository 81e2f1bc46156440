#pragma once

// Command-line front end over the library: loads an input file (graph,
// trellis, factor graph, decision diagram, hypergraph or tape), runs one
// pipeline and serializes the result. Lives in a static library so the
// test suite can drive it through the same entry point as main().

#include <iosfwd>

namespace semigraph {

// Parses argv, runs one command, writes results to `out` and diagnostics
// to `err`. Returns 0 on success, 2 on command-line or input parse/schema
// errors, 3 on engine errors (the message names the error case).
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace semigraph
