#include "rootshell/cgamma.hpp"

#include <cmath>
#include <numbers>

namespace rootshell {

namespace {

// Godfrey's coefficients for g = 607/128, 15 terms.
constexpr double kLanczosG = 4.7421875;
constexpr double kLanczos[15] = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

std::complex<double> lanczos_half_plane(std::complex<double> s) {
    // requires Re(s) >= 1/2
    std::complex<double> acc = kLanczos[0];
    for (int k = 1; k < 15; ++k) acc += kLanczos[k] / (s - 1.0 + static_cast<double>(k));
    std::complex<double> base = s + (kLanczosG - 0.5);
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(base, s - 0.5) * std::exp(-base) * acc;
}

}  // namespace

double gamma_pole_distance(std::complex<double> s) {
    double k = std::round(-s.real());
    if (k < 0.0) k = 0.0;
    return std::abs(s + k);
}

std::complex<double> cgamma(std::complex<double> s) {
    if (s.real() >= 0.5) return lanczos_half_plane(s);
    // reflection formula; |Im s| <= 50 keeps sin(pi s) far below overflow
    std::complex<double> pi = std::numbers::pi;
    return pi / (std::sin(pi * s) * lanczos_half_plane(1.0 - s));
}

}  // namespace rootshell
