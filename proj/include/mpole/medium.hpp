#pragma once

#include <string>
#include <vector>

namespace mpole {

inline constexpr double kSpeedOfLight = 299792458.0;       // m/s
inline constexpr double kVacuumPermeability = 1.25663706212e-6;  // H/m
inline constexpr double kVacuumImpedance = kVacuumPermeability * kSpeedOfLight;  // ohm

/// Homogeneous lossless exterior medium.
struct Medium {
    double k = 0.0;    // wavenumber, rad/m
    double z0 = 0.0;   // wave impedance, ohm
    double mu0 = kVacuumPermeability;  // permeability, H/m; only used to report B = mu0 H

    /// Free space at the given frequency.
    static Medium free_space(double frequency_hz);

    /// Throws std::invalid_argument unless k > 0 and Z0 > 0 (and both finite).
    void validate() const;
};

/// Non-fatal conditions collected while computing (coarse grids, ill
/// conditioned modes). Kept apart from data outputs.
struct Diagnostics {
    std::vector<std::string> warnings;

    void warn(std::string message) { warnings.push_back(std::move(message)); }
    bool empty() const noexcept { return warnings.empty(); }
};

}  // namespace mpole
