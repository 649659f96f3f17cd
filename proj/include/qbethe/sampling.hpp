#ifndef QBETHE_SAMPLING_HPP
#define QBETHE_SAMPLING_HPP

#include <cstdint>
#include <vector>

#include "qbethe/scalar.hpp"

namespace qbethe {

// splitmix64: the fixed, documented generator behind every seeded run, so that
// identical configs reproduce identical parameter draws across builds.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // Uniform in [0, n)
    uint64_t below(uint64_t n) { return next() % n; }
    long range(long lo, long hi) { // inclusive
        return lo + static_cast<long>(below(static_cast<uint64_t>(hi - lo + 1)));
    }

private:
    uint64_t state_;
};

// Random nonzero rational with numerator and denominator in [-50, 50].
Scalar random_rational(Rng& rng);

// Draws a value distinct from everything in `avoid`, from q^{+-2}-shifts of
// `avoid`, and nonzero. Used to keep residue preconditions generic.
Scalar random_parameter(Rng& rng, const Scalar& q, const std::vector<Scalar>& avoid);

// A full generic parameter set: inhomogeneities and the four spectral families.
struct ParameterDraw {
    std::vector<Scalar> xi, t, s, tau, sigma;
};

ParameterDraw draw_parameters(Rng& rng, const Scalar& q, int sites, int a, int b);

} // namespace qbethe

#endif
