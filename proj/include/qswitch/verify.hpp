#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qswitch {

/// One self-verification check: `worst` is the extreme value observed
/// over all cases and must satisfy `worst cmp bound`.
struct VerifyCheck {
    std::string name;
    long cases = 0;
    double worst = 0.0;
    double bound = 0.0;
    char comparator = '<'; // '<' worst <= bound, '>' worst >= bound
    bool passed = false;
};

struct VerifyOptions {
    std::uint64_t seed = 20250614ULL;
    unsigned threads = 1;
    int channel_pairs = 50; // random channel pairs in the oracle grid
    std::ostream* log = nullptr;
};

/// Runs the full self-verification battery: the brute-force-vs-closed-form
/// oracle grid, thermodynamic bookkeeping, channel algebra, and the
/// monitoring and refrigerator cross-checks.
std::vector<VerifyCheck> run_verification(const VerifyOptions& options);

bool all_passed(const std::vector<VerifyCheck>& checks);

} // namespace qswitch
