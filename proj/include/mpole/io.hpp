#pragma once

// File formats.
//
// Coefficient file (JSON):
//   { "schema_version": "1.0", "l_max": L, "frequency_hz": f,
//     "medium": { "k": k, "Z0": Z0 },
//     "modes": [ { "l": 1, "m": -1, "aE": [re, im], "aM": [re, im] }, ... ] }
//   Every (l, m) with 1 <= l <= L, |m| <= l appears exactly once; writers emit
//   l ascending, then m ascending.
//
// Field file (CSV): "# key=value" preamble (radius_m, frequency_hz, grid_lmax,
// n_theta, n_phi, wavenumber_rad_per_m, impedance_ohm, optional band_limit),
// a header row, then one row per node, theta-major:
//   theta_rad,phi_rad,weight_sr,Er_re,Er_im,Etheta_re,Etheta_im,Ephi_re,Ephi_im,
//   Hr_re,Hr_im,Htheta_re,Htheta_im,Hphi_re,Hphi_im
// Absent components are left as empty cells. Numbers use 17 significant digits.

#include "mpole/harmonics.hpp"
#include "mpole/multipole.hpp"

#include <array>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

namespace mpole::io {

/// Malformed or inconsistent input file.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr const char* kCoeffSchemaVersion = "1.0";

struct CoeffFile {
    std::string schema_version = kCoeffSchemaVersion;
    double frequency_hz = 0.0;
    CoefficientSet coeffs;
};

CoeffFile parse_coeff_json(const std::string& text);
std::string to_json(const CoeffFile& file);
CoeffFile read_coeff_file(const std::string& path);
void write_coeff_file(const std::string& path, const CoeffFile& file);

/// Medium for a coefficient file: permeability follows from Z0 k / omega.
Medium medium_from(double k, double z0, double frequency_hz);

enum Component : std::size_t { Er, Etheta, Ephi, Hr, Htheta, Hphi };
inline constexpr std::array<const char*, 6> kComponentNames = {"E_r", "E_theta", "E_phi",
                                                                "H_r", "H_theta", "H_phi"};

struct FieldFile {
    double frequency_hz = 0.0;
    int grid_lmax = 0;
    std::shared_ptr<const SphereGrid> grid;
    FieldSamples e;
    FieldSamples h;
    std::array<bool, 6> present{};

    bool has(Component c) const noexcept { return present[c]; }
};

/// Builds a field file from synthesized fields, all six components present.
FieldFile make_field_file(const FieldPair& fields, double frequency_hz);

void write_field_csv(std::ostream& os, const FieldFile& file);
FieldFile read_field_csv(std::istream& is);
void write_field_file(const std::string& path, const FieldFile& file);
FieldFile read_field_file(const std::string& path);

struct PatternOptions {
    bool normalize = false;  // divide magnitudes by the peak |E|
};

/// theta_rad,phi_rad,abs_Etheta,abs_Ephi,arg_Etheta_rad,arg_Ephi_rad
void write_pattern_csv(std::ostream& os, const FarFieldPattern& pattern, const PatternOptions& options = {});
void write_pattern_file(const std::string& path, const FarFieldPattern& pattern,
                        const PatternOptions& options = {});

/// "%.17g"
std::string format_number(double v);

}  // namespace mpole::io
