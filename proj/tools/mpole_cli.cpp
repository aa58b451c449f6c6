// mpole: synthesize multipole fields on a sphere, recover coefficients by the
// radial / tangential-E / tangential-H routes, compare them, and compute far
// fields.
//
// Exit status: 0 success (within tolerance), 1 input error, 2 tolerance exceeded.

#include "CLI11.hpp"

#include "mpole/dipole.hpp"
#include "mpole/extraction.hpp"
#include "mpole/io.hpp"
#include "mpole/multipole.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace mpole;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitTolerance = 2;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void print_warnings(const Diagnostics& diag) {
    for (const std::string& w : diag.warnings) std::cerr << "warning: " << w << "\n";
}

Route parse_route(const std::string& name) {
    if (name == "radial") return Route::radial;
    if (name == "tan-e") return Route::tangential_e;
    if (name == "tan-h") return Route::tangential_h;
    throw InputError("unknown route '" + name + "' (expected radial, tan-e or tan-h)");
}

void require_components(const io::FieldFile& f, Route route) {
    std::vector<io::Component> needed;
    switch (route) {
        case Route::radial: needed = {io::Er, io::Hr}; break;
        case Route::tangential_e: needed = {io::Etheta, io::Ephi}; break;
        case Route::tangential_h: needed = {io::Htheta, io::Hphi}; break;
    }
    std::string missing;
    for (io::Component c : needed) {
        if (!f.has(c)) missing += (missing.empty() ? "" : ", ") + std::string(io::kComponentNames[c]);
    }
    if (!missing.empty()) {
        std::string all;
        for (io::Component c : needed) all += (all.empty() ? "" : " and ") + std::string(io::kComponentNames[c]);
        throw InputError("route " + std::string(route_name(route)) + " requires " + all +
                         "; field file lacks " + missing);
    }
}

ExtractionReport run_route(const io::FieldFile& f, Route route, int l_max, const ExtractionOptions& opt) {
    require_components(f, route);
    switch (route) {
        case Route::radial: return extract_radial(f.e, f.h, l_max, opt);
        case Route::tangential_e: return extract_tangential_e(f.e, l_max, opt);
        case Route::tangential_h: return extract_tangential_h(f.h, l_max, opt);
    }
    throw InputError("unknown route");
}

// ---------------------------------------------------------------------------

struct SynthArgs {
    std::string coeff_file;
    double radius = 0.0;
    int grid_lmax = 0;
    std::string out;
};

int cmd_synth(const SynthArgs& a) {
    const io::CoeffFile cf = io::read_coeff_file(a.coeff_file);
    if (!(a.radius > 0.0)) throw InputError("--radius must be > 0");
    const int grid_lmax = a.grid_lmax > 0 ? a.grid_lmax : cf.coeffs.l_max();
    if (grid_lmax < cf.coeffs.l_max()) {
        throw InputError("--grid-lmax " + std::to_string(grid_lmax) + " below coefficient l_max " +
                         std::to_string(cf.coeffs.l_max()));
    }
    const FieldPair fields = synthesize(cf.coeffs, a.radius, make_grid(grid_lmax, a.radius));
    io::FieldFile ff = io::make_field_file(fields, cf.frequency_hz);
    ff.grid_lmax = grid_lmax;
    io::write_field_file(a.out, ff);
    return kExitOk;
}

struct ExtractArgs {
    std::string field_file;
    std::string route = "radial";
    int l_max = 0;
    std::string out;
    double threshold = 1e6;
};

int cmd_extract(const ExtractArgs& a) {
    const io::FieldFile ff = io::read_field_file(a.field_file);
    const Route route = parse_route(a.route);
    const int l_max = a.l_max > 0 ? a.l_max : ff.grid_lmax;
    ExtractionOptions opt;
    opt.condition_threshold = a.threshold;
    const ExtractionReport rep = run_route(ff, route, l_max, opt);
    print_warnings(rep.diagnostics);
    io::write_coeff_file(a.out, io::CoeffFile{io::kCoeffSchemaVersion, ff.frequency_hz, rep.coeffs});
    return kExitOk;
}

struct EquivArgs {
    std::string field_file;
    int l_max = 0;
    double tol = 1e-8;
    double threshold = 1e6;
};

int cmd_equiv(const EquivArgs& a) {
    const io::FieldFile ff = io::read_field_file(a.field_file);
    const int l_max = a.l_max > 0 ? a.l_max : ff.grid_lmax;
    for (Route r : {Route::radial, Route::tangential_e, Route::tangential_h}) require_components(ff, r);
    ExtractionOptions opt;
    opt.condition_threshold = a.threshold;
    const EquivalenceReport rep = equivalence_report(ff.e, ff.h, l_max, opt);
    for (const ExtractionReport& r : rep.routes) print_warnings(r.diagnostics);

    std::cout << "# l m route aE_re aE_im aM_re aM_im\n";
    for (int l = 1; l <= l_max; ++l) {
        for (int m = -l; m <= l; ++m) {
            for (const ExtractionReport& r : rep.routes) {
                const cdouble ae = r.coeffs.a_e(l, m);
                const cdouble am = r.coeffs.a_m(l, m);
                std::cout << l << ' ' << m << ' ' << route_name(r.route) << ' ' << io::format_number(ae.real())
                          << ' ' << io::format_number(ae.imag()) << ' ' << io::format_number(am.real()) << ' '
                          << io::format_number(am.imag()) << "\n";
            }
        }
    }
    const double dev = rep.max_deviation();
    std::cout << "deviation radial/tan-e=" << io::format_number(rep.radial_vs_e)
              << " radial/tan-h=" << io::format_number(rep.radial_vs_h)
              << " tan-e/tan-h=" << io::format_number(rep.e_vs_h) << "\n";
    std::cout << "max_deviation=" << io::format_number(dev) << " tol=" << io::format_number(a.tol) << " "
              << (dev <= a.tol ? "PASS" : "FAIL") << "\n";
    return dev <= a.tol ? kExitOk : kExitTolerance;
}

struct FarfieldArgs {
    std::string coeff_file;
    int n_theta = 180;
    int n_phi = 1;
    std::string out;
    bool normalize = false;
};

int cmd_farfield(const FarfieldArgs& a) {
    const io::CoeffFile cf = io::read_coeff_file(a.coeff_file);
    if (a.n_theta < 1 || a.n_phi < 1) throw InputError("--n-theta and --n-phi must be >= 1");
    // theta_i = pi i / n_theta (poles included), phi_j = 2 pi j / n_phi.
    std::vector<Direction> dirs;
    dirs.reserve(static_cast<std::size_t>(a.n_theta + 1) * static_cast<std::size_t>(a.n_phi));
    for (int i = 0; i <= a.n_theta; ++i) {
        for (int j = 0; j < a.n_phi; ++j) {
            dirs.push_back({kPi * i / a.n_theta, 2.0 * kPi * j / a.n_phi});
        }
    }
    io::write_pattern_file(a.out, far_field(cf.coeffs, dirs), {a.normalize});
    return kExitOk;
}

struct DipoleArgs {
    double current = 1.0;
    double freq = 1e9;
    std::string prefix = "dipole";
    int grid_lmax = kHalfwaveDegree;
    int points = kPatternPoints;
    double tol = 1e-8;
};

void write_cut(const std::string& path, const std::vector<double>& theta, const std::vector<double>& mag) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io::FormatError("cannot write '" + path + "'");
    out << "theta_rad,abs_Etheta_normalized\n";
    for (std::size_t i = 0; i < theta.size(); ++i) {
        out << io::format_number(theta[i]) << ',' << io::format_number(mag[i]) << "\n";
    }
}

int cmd_dipole(const DipoleArgs& a) {
    if (!(a.current > 0.0)) throw InputError("--current must be > 0");
    if (!(a.freq > 0.0)) throw InputError("--freq must be > 0");
    if (a.grid_lmax < kHalfwaveDegree) {
        throw InputError("--grid-lmax must be >= " + std::to_string(kHalfwaveDegree));
    }
    const DipoleSpec spec{a.current, kSpeedOfLight / a.freq};

    // Radial "source" on the quarter-wavelength sphere.
    const SphereGrid grid = make_grid(a.grid_lmax, spec.wavelength / 4.0);
    const FieldSamples source = radial_source_on_sphere(spec, grid);
    io::FieldFile sf{a.freq, a.grid_lmax, source.grid_ptr(), source,
                     FieldSamples(source.grid_ptr(), FieldKind::magnetic, source.medium()), {}};
    sf.present[io::Er] = true;
    io::write_field_file(a.prefix + "_radial_source.csv", sf);

    io::write_coeff_file(a.prefix + "_coeffs.json",
                         io::CoeffFile{io::kCoeffSchemaVersion, a.freq, halfwave_coeffs(spec)});

    const PatternComparison cmp = validate_roundtrip(spec, a.grid_lmax, a.points);
    write_cut(a.prefix + "_farfield_direct.csv", cmp.theta, cmp.direct);
    write_cut(a.prefix + "_farfield_radial.csv", cmp.theta, cmp.recovered);

    const DualComparison dual = magnetic_dipole_variant(spec, a.grid_lmax, a.points);
    io::write_pattern_file(a.prefix + "_magnetic_dual.csv", dual.dual_pattern, {true});

    std::ostringstream summary;
    summary << "roundtrip_rms_deviation=" << io::format_number(cmp.rms_deviation)
            << " E_phi negligible: " << (cmp.e_phi_negligible ? "true" : "false")
            << " peak_theta_rad=" << io::format_number(cmp.peak_theta)
            << " dual_radial_mismatch=" << io::format_number(dual.radial_mismatch)
            << " dual_E_theta_ratio=" << io::format_number(dual.dual_e_theta);
    std::cout << summary.str() << "\n";
    return cmp.rms_deviation <= a.tol ? kExitOk : kExitTolerance;
}

template <class F>
int guarded(F&& f) {
    try {
        return f();
    } catch (const InputError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
    } catch (const io::FormatError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
    } catch (const std::invalid_argument& ex) {
        std::cerr << "error: " << ex.what() << "\n";
    } catch (const std::domain_error& ex) {
        std::cerr << "error: " << ex.what() << "\n";
    } catch (const std::out_of_range& ex) {
        std::cerr << "error: " << ex.what() << "\n";
    }
    return kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multipole field synthesis, coefficient extraction and route comparison"};
    app.require_subcommand(1);

    SynthArgs synth;
    auto* c_synth = app.add_subcommand("synth", "synthesize E and H on a sphere from a coefficient file");
    c_synth->add_option("coeff-file", synth.coeff_file, "coefficient JSON")->required();
    c_synth->add_option("--radius", synth.radius, "sphere radius in metres")->required();
    c_synth->add_option("--grid-lmax", synth.grid_lmax, "grid exactness degree (default: coefficient l_max)");
    c_synth->add_option("--out", synth.out, "output field CSV")->required();

    ExtractArgs extract;
    auto* c_extract = app.add_subcommand("extract", "recover coefficients from a field file");
    c_extract->add_option("field-file", extract.field_file, "field CSV")->required();
    c_extract->add_option("--route", extract.route, "radial | tan-e | tan-h")->required();
    c_extract->add_option("--lmax", extract.l_max, "truncation degree (default: grid l_max)");
    c_extract->add_option("--out", extract.out, "output coefficient JSON")->required();
    c_extract->add_option("--cond-threshold", extract.threshold, "ill-conditioning warning threshold");

    EquivArgs equiv;
    auto* c_equiv = app.add_subcommand("equiv", "run all three routes and compare them");
    c_equiv->add_option("field-file", equiv.field_file, "field CSV")->required();
    c_equiv->add_option("--lmax", equiv.l_max, "truncation degree (default: grid l_max)");
    c_equiv->add_option("--tol", equiv.tol, "maximum pairwise deviation for exit status 0");
    c_equiv->add_option("--cond-threshold", equiv.threshold, "ill-conditioning warning threshold");

    FarfieldArgs ff;
    auto* c_ff = app.add_subcommand("farfield", "far-field pattern of a coefficient file");
    c_ff->add_option("coeff-file", ff.coeff_file, "coefficient JSON")->required();
    c_ff->add_option("--n-theta", ff.n_theta, "theta intervals over [0, pi]");
    c_ff->add_option("--n-phi", ff.n_phi, "phi samples over [0, 2 pi)");
    c_ff->add_option("--out", ff.out, "output pattern CSV")->required();
    c_ff->add_flag("--normalize", ff.normalize, "divide magnitudes by the peak |E|");

    DipoleArgs dip;
    auto* c_dip = app.add_subcommand("dipole", "half-wave dipole reproduction");
    c_dip->add_option("--current", dip.current, "feed current amplitude in A");
    c_dip->add_option("--freq", dip.freq, "frequency in Hz");
    c_dip->add_option("--out-prefix,--out", dip.prefix, "prefix of the emitted CSV files");
    c_dip->add_option("--grid-lmax", dip.grid_lmax, "grid exactness degree on the lambda/4 sphere");
    c_dip->add_option("--points", dip.points, "theta samples in the pattern cut");
    c_dip->add_option("--tol", dip.tol, "maximum round-trip deviation for exit status 0");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    if (*c_synth) return guarded([&] { return cmd_synth(synth); });
    if (*c_extract) return guarded([&] { return cmd_extract(extract); });
    if (*c_equiv) return guarded([&] { return cmd_equiv(equiv); });
    if (*c_ff) return guarded([&] { return cmd_farfield(ff); });
    if (*c_dip) return guarded([&] { return cmd_dipole(dip); });
    return kExitInput;
}
