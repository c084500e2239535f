// SPDX-License-Identifier: Apache-2.0
//
// Named constructions, addressable from the command line and the Python
// module by short text specs.

#pragma once

#include "brouwer/drift.hpp"
#include "brouwer/fleeing.hpp"
#include "brouwer/spreads.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace brouwer {

struct SpecHelp {
    std::string pattern;
    std::string description;
    bool needs_trace = false;
};

/// Every accepted generator spec pattern.
const std::vector<SpecHelp> &generator_specs();

/// zero | one | half | minus-one | centered:<m/2^k> | kernel:<drift> |
/// berlin-s | vienna-e | checking:<drift>:<kind> | berlin-r[:<property>] |
/// cambridge-c[:<property>] | veldman-f2[:<property>]
Generator generator_from_spec(std::string_view spec);

/// run:<digit>x<length> | pattern:<digits> | threshold:<k> | singleton:<k> | empty
DecidableProperty property_from_spec(std::string_view spec, DigitOracle &oracle = DigitOracle::shared());

} // namespace brouwer
