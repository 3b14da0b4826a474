#pragma once

#include <complex>

namespace rootshell {

// Gamma on the complex plane via the 15-term Lanczos series (g = 607/128),
// reflected onto Re s < 1/2.  Relative error stays around 1e-13 for |s| <= 50
// away from the poles, which is what the scattering-factor layer needs.
std::complex<double> cgamma(std::complex<double> s);

// distance from s to the nearest pole of Gamma (the nonpositive integers)
double gamma_pole_distance(std::complex<double> s);

}  // namespace rootshell
