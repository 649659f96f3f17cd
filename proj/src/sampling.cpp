#include "qbethe/sampling.hpp"

namespace qbethe {

Scalar random_rational(Rng& rng) {
    long num = 0;
    while (num == 0) num = rng.range(-50, 50);
    long den = rng.range(1, 50);
    return Scalar(num, den);
}

namespace {

bool clashes(const Scalar& c, const Scalar& q, const std::vector<Scalar>& avoid) {
    Scalar q2 = q * q;
    for (const auto& a : avoid) {
        if (c == a) return true;
        if (c == q2 * a || a == q2 * c) return true;
    }
    return false;
}

} // namespace

Scalar random_parameter(Rng& rng, const Scalar& q, const std::vector<Scalar>& avoid) {
    for (int tries = 0; tries < 4096; ++tries) {
        Scalar c = random_rational(rng);
        if (!clashes(c, q, avoid)) return c;
    }
    throw Error(ErrorCode::ParameterCollision, "could not sample a collision-free parameter");
}

ParameterDraw draw_parameters(Rng& rng, const Scalar& q, int sites, int a, int b) {
    ParameterDraw d;
    std::vector<Scalar> used;
    auto take = [&](std::vector<Scalar>& fam, int n) {
        for (int i = 0; i < n; ++i) {
            Scalar c = random_parameter(rng, q, used);
            fam.push_back(c);
            used.push_back(c);
        }
    };
    take(d.xi, sites);
    take(d.t, a);
    take(d.s, b);
    take(d.tau, a);
    take(d.sigma, b);
    return d;
}

} // namespace qbethe
