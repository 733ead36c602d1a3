#pragma once

#include <string>
#include <vector>

namespace liouville {

struct SelftestCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// The built-in oracle suite: sieve vs point evaluation, bit-plane counts
/// vs characteristic-function sums, and the exact pair-count identities.
/// inject_fault flips one sieved bit first (negative control; the sieve
/// check must then fail).
std::vector<SelftestCheck> run_selftest(bool inject_fault = false);

bool all_passed(const std::vector<SelftestCheck>& checks);

}  // namespace liouville
