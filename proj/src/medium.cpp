#include "mpole/medium.hpp"

#include "mpole/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace mpole {

Medium Medium::free_space(double frequency_hz) {
    if (!(frequency_hz > 0.0) || !std::isfinite(frequency_hz)) {
        throw std::invalid_argument("frequency must be positive and finite");
    }
    return {2.0 * kPi * frequency_hz / kSpeedOfLight, kVacuumImpedance, kVacuumPermeability};
}

void Medium::validate() const {
    if (!(k > 0.0) || !std::isfinite(k)) throw std::invalid_argument("medium wavenumber must be > 0");
    if (!(z0 > 0.0) || !std::isfinite(z0)) throw std::invalid_argument("medium impedance must be > 0");
}

}  // namespace mpole
