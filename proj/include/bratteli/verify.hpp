#pragma once

#include "bratteli/analysis.hpp"

#include <random>
#include <string>
#include <vector>

namespace bratteli {

// Translation a(x, y) measured by laying the decoded generation-n supertiles
// of x and y side by side as `h` prescribes (h only decides the side).
AlgebraicNumber glued_translation(const BratteliDiagram& d, const EventuallyPeriodicPath& x,
                                  const EventuallyPeriodicPath& y, int h, int generation);

// The collared patches of x and y at `generation`, shifted by -a, agree tile
// by tile on their overlap. Returns the number of overlapping tiles, or -1 on
// a mismatch.
int patch_overlap(const BratteliDiagram& d, const EventuallyPeriodicPath& x, const EventuallyPeriodicPath& y,
                  const AlgebraicNumber& a, int generation);

// Seeded primitive, aperiodic substitution on `letters` letters with rules of
// length 1..3.
Substitution random_primitive_substitution(std::mt19937& rng, int letters);

struct CheckResult {
    int id = 0;
    std::string title;
    bool applicable = true;
    bool pass = false;
    std::string detail;
    double seconds = 0;  // wall time, kept out of format_check
};

struct BatteryOptions {
    bool fibonacci = true;
    bool thue_morse = true;
    unsigned seed = 20090601u;
};

std::vector<CheckResult> run_battery(const BatteryOptions& options = {});
std::string format_check(const CheckResult& r);

}  // namespace bratteli
