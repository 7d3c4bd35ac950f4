#pragma once

#include <cmath>

namespace conicfib {

// Gamma(x) for x > 0 by the Lanczos approximation (g = 7, 9 terms),
// accurate to ~1e-14 relative in long double.
inline long double gamma_fn(long double x) {
    static const long double kCoef[9] = {
        0.99999999999980993227684700473478L,
        676.520368121885098567009190444019L,
        -1259.13921672240287047156078755283L,
        771.3234287776530788486528258894L,
        -176.61502916214059906584551354L,
        12.507343278686904814458936853L,
        -0.13857109526572011689554707L,
        9.984369578019570859563e-6L,
        1.50563273514931155834e-7L};
    const long double kPi = 3.141592653589793238462643383279502884L;
    if (x < 0.5L)
        return kPi / (std::sin(kPi * x) * gamma_fn(1.0L - x));
    x -= 1.0L;
    long double a = kCoef[0];
    const long double t = x + 7.5L;
    for (int i = 1; i < 9; ++i) a += kCoef[i] / (x + i);
    return std::sqrt(2.0L * kPi) * std::pow(t, x + 0.5L) * std::exp(-t) * a;
}

}  // namespace conicfib
