#pragma once

#include <cstdint>
#include <random>

namespace dhyp {

// mt19937_64 with an explicit 53-bit mapping so draws match across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    double uniform() { return double(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int bit() { return static_cast<int>(eng_() >> 63); }

private:
    std::mt19937_64 eng_;
};

}  // namespace dhyp
