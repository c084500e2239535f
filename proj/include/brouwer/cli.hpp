// SPDX-License-Identifier: Apache-2.0
//
// The `brouwer` command line. Every command builds one JSON record; text
// output renders the same record.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace brouwer {

enum ExitCode : int { ExitOk = 0, ExitMismatch = 1, ExitUsage = 2, ExitRefused = 64 };

/// key=value settings (horizon, nodes, atoms, digits, seed); `#` comments.
struct Config {
    std::uint64_t horizon = 64;
    std::uint64_t nodes = 5;
    std::uint64_t atoms = 2;
    std::uint64_t digits = 0; ///< 0: keep the oracle's limit
    std::uint64_t seed = 1;

    static Config parse(const std::string &text);
    static Config load(const std::string &path);
};

/// `args` excludes the program name.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace brouwer
