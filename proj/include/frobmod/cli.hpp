#pragma once

#include <string>
#include <vector>

#include "frobmod/frobmod.hpp"

namespace frob {

// One parsed invocation. File-based verbs accept several inputs; with
// `batch` they run concurrently, output ordered by input order.
struct Command {
    std::string verb;
    std::vector<std::string> inputs;
    int r = 1;
    i64 p = 3;
    i64 e = 1;
    int rmax = 6;
    int smax = 12;
    int mmax = 16;
    int max_power = 12;
    i64 cap = 1000000;
    i64 degree_guard = 10000;
    bool machine = false;
    bool batch = false;
};

// exit 0: success; exit 2: a verified negative finding (not simple, failed
// verdict, unverified root); exit 1: any error, reported in `error`
struct CliResult {
    std::string output;
    std::string error;
    int exit_code = 0;
};

CliResult run_command(const Command& cmd);

bool verb_needs_input(const std::string& verb);

}  // namespace frob
