#include "mpole/io.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace mpole::io {

using ordered_json = nlohmann::ordered_json;

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Medium medium_from(double k, double z0, double frequency_hz) {
    Medium m{k, z0, kVacuumPermeability};
    if (frequency_hz > 0.0) m.mu0 = z0 * k / (2.0 * kPi * frequency_hz);
    return m;
}

// ---------------------------------------------------------------------------
// Coefficient files

namespace {

double number_at(const ordered_json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number()) {
        throw FormatError(std::string("coefficient file: missing numeric field '") + key + "'");
    }
    return j.at(key).get<double>();
}

cdouble complex_at(const ordered_json& mode, const char* key) {
    if (!mode.contains(key)) {
        throw FormatError(std::string("coefficient file: mode without '") + key + "'");
    }
    const ordered_json& v = mode.at(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        throw FormatError(std::string("coefficient file: '") + key + "' must be [re, im]");
    }
    return {v[0].get<double>(), v[1].get<double>()};
}

}  // namespace

CoeffFile parse_coeff_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& ex) {
        throw FormatError(std::string("coefficient file is not valid JSON: ") + ex.what());
    }
    if (!j.is_object()) throw FormatError("coefficient file: top level must be an object");
    if (!j.contains("schema_version") || !j.at("schema_version").is_string()) {
        throw FormatError("coefficient file: missing schema_version");
    }
    const std::string version = j.at("schema_version").get<std::string>();
    if (version != kCoeffSchemaVersion) {
        throw FormatError("coefficient file: unsupported schema_version '" + version + "'");
    }
    if (!j.contains("l_max") || !j.at("l_max").is_number_integer()) {
        throw FormatError("coefficient file: missing integer l_max");
    }
    const int l_max = j.at("l_max").get<int>();
    if (l_max < 1) throw FormatError("coefficient file: l_max must be >= 1");
    const double freq = number_at(j, "frequency_hz");
    if (!j.contains("medium") || !j.at("medium").is_object()) {
        throw FormatError("coefficient file: missing medium");
    }
    const double k = number_at(j.at("medium"), "k");
    const double z0 = number_at(j.at("medium"), "Z0");
    if (!(k > 0.0) || !(z0 > 0.0)) throw FormatError("coefficient file: medium needs k > 0 and Z0 > 0");

    CoeffFile out{version, freq, CoefficientSet(l_max, medium_from(k, z0, freq))};
    if (!j.contains("modes") || !j.at("modes").is_array()) {
        throw FormatError("coefficient file: missing modes array");
    }
    std::vector<bool> seen(mode_count(l_max), false);
    for (const ordered_json& mode : j.at("modes")) {
        if (!mode.is_object() || !mode.contains("l") || !mode.contains("m") ||
            !mode.at("l").is_number_integer() || !mode.at("m").is_number_integer()) {
            throw FormatError("coefficient file: each mode needs integer l and m");
        }
        const int l = mode.at("l").get<int>();
        const int m = mode.at("m").get<int>();
        if (l < 1 || l > l_max || m < -l || m > l) {
            throw FormatError("coefficient file: mode (" + std::to_string(l) + ", " + std::to_string(m) +
                              ") outside 1 <= l <= l_max, |m| <= l");
        }
        const std::size_t at = mode_offset(l, m);
        if (seen[at]) {
            throw FormatError("coefficient file: duplicate mode (" + std::to_string(l) + ", " +
                              std::to_string(m) + ")");
        }
        seen[at] = true;
        out.coeffs.set_a_e(l, m, complex_at(mode, "aE"));
        out.coeffs.set_a_m(l, m, complex_at(mode, "aM"));
    }
    for (std::size_t i = 0; i < seen.size(); ++i) {
        if (!seen[i]) {
            const ModeIndex missing = mode_at(i);
            throw FormatError("coefficient file: mode (" + std::to_string(missing.l) + ", " +
                              std::to_string(missing.m) + ") missing");
        }
    }
    try {
        out.coeffs.require_finite();
    } catch (const std::invalid_argument& ex) {
        throw FormatError(std::string("coefficient file: ") + ex.what());
    }
    return out;
}

std::string to_json(const CoeffFile& file) {
    const CoefficientSet& c = file.coeffs;
    ordered_json j;
    j["schema_version"] = file.schema_version;
    j["l_max"] = c.l_max();
    j["frequency_hz"] = file.frequency_hz;
    j["medium"] = {{"k", c.medium().k}, {"Z0", c.medium().z0}};
    ordered_json modes = ordered_json::array();
    for (int l = 1; l <= c.l_max(); ++l) {
        for (int m = -l; m <= l; ++m) {
            const cdouble ae = c.a_e(l, m);
            const cdouble am = c.a_m(l, m);
            modes.push_back({{"l", l},
                             {"m", m},
                             {"aE", {ae.real(), ae.imag()}},
                             {"aM", {am.real(), am.imag()}}});
        }
    }
    j["modes"] = std::move(modes);
    return j.dump(2) + "\n";
}

CoeffFile read_coeff_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open coefficient file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_coeff_json(ss.str());
}

void write_coeff_file(const std::string& path, const CoeffFile& file) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write '" + path + "'");
    out << to_json(file);
}

// ---------------------------------------------------------------------------
// Field files

namespace {

constexpr const char* kFieldHeader =
    "theta_rad,phi_rad,weight_sr,Er_re,Er_im,Etheta_re,Etheta_im,Ephi_re,Ephi_im,"
    "Hr_re,Hr_im,Htheta_re,Htheta_im,Hphi_re,Hphi_im";

const ComponentArray& component(const FieldFile& f, std::size_t c) {
    const FieldSamples& s = c < 3 ? f.e : f.h;
    switch (c % 3) {
        case 0: return s.r();
        case 1: return s.theta();
        default: return s.phi();
    }
}

ComponentArray& component(FieldFile& f, std::size_t c) {
    return const_cast<ComponentArray&>(component(static_cast<const FieldFile&>(f), c));
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

double parse_double(const std::string& s, std::size_t row, const char* what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw FormatError("field file row " + std::to_string(row) + ": bad " + what + " '" + s + "'");
    }
}

std::string trim(std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
    std::size_t b = 0;
    while (b < s.size() && (s[b] == ' ' || s[b] == '\t')) ++b;
    return s.substr(b);
}

}  // namespace

FieldFile make_field_file(const FieldPair& fields, double frequency_hz) {
    FieldFile f{frequency_hz, fields.e.grid().l_max(), fields.e.grid_ptr(), fields.e, fields.h, {}};
    f.present.fill(true);
    return f;
}

void write_field_csv(std::ostream& os, const FieldFile& file) {
    const SphereGrid& g = *file.grid;
    const Medium& med = file.e.medium();
    os << "# radius_m=" << format_number(g.radius()) << "\n";
    os << "# frequency_hz=" << format_number(file.frequency_hz) << "\n";
    os << "# grid_lmax=" << file.grid_lmax << "\n";
    os << "# n_theta=" << g.n_theta() << "\n";
    os << "# n_phi=" << g.n_phi() << "\n";
    os << "# wavenumber_rad_per_m=" << format_number(med.k) << "\n";
    os << "# impedance_ohm=" << format_number(med.z0) << "\n";
    if (const auto band = file.e.band_limit.has_value() ? file.e.band_limit : file.h.band_limit) {
        os << "# band_limit=" << *band << "\n";
    }
    os << kFieldHeader << "\n";
    const std::span<const double> w = g.weights();
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Direction d = g.node(i);
        os << format_number(d.theta) << ',' << format_number(d.phi) << ',' << format_number(w[i]);
        for (std::size_t c = 0; c < 6; ++c) {
            if (file.present[c]) {
                const cdouble v = component(file, c).at(i);
                os << ',' << format_number(v.real()) << ',' << format_number(v.imag());
            } else {
                os << ",,";
            }
        }
        os << "\n";
    }
}

FieldFile read_field_csv(std::istream& is) {
    std::map<std::string, std::string> meta;
    std::string line;
    bool have_header = false;
    std::vector<std::vector<std::string>> rows;
    while (std::getline(is, line)) {
        line = trim(line);
        if (line.empty()) continue;
        if (line[0] == '#') {
            const std::string body = trim(line.substr(1));
            const auto eq = body.find('=');
            if (eq != std::string::npos) meta[trim(body.substr(0, eq))] = trim(body.substr(eq + 1));
            continue;
        }
        if (!have_header) {
            if (line != kFieldHeader) throw FormatError("field file: unexpected header '" + line + "'");
            have_header = true;
            continue;
        }
        rows.push_back(split_csv(line));
    }
    if (!have_header) throw FormatError("field file: header row missing");

    auto need = [&](const char* key) -> const std::string& {
        const auto it = meta.find(key);
        if (it == meta.end()) throw FormatError(std::string("field file: preamble lacks '") + key + "'");
        return it->second;
    };
    const double radius = parse_double(need("radius_m"), 0, "radius_m");
    const double freq = parse_double(need("frequency_hz"), 0, "frequency_hz");
    const int grid_lmax = static_cast<int>(parse_double(need("grid_lmax"), 0, "grid_lmax"));
    if (!(radius > 0.0)) throw FormatError("field file: radius_m must be > 0");
    if (grid_lmax < 1) throw FormatError("field file: grid_lmax must be >= 1");
    const int n_theta = meta.count("n_theta") ? std::stoi(meta["n_theta"]) : grid_lmax + 1;
    const int n_phi = meta.count("n_phi") ? std::stoi(meta["n_phi"]) : 2 * grid_lmax + 2;

    Medium med;
    if (meta.count("wavenumber_rad_per_m") && meta.count("impedance_ohm")) {
        med = medium_from(parse_double(meta["wavenumber_rad_per_m"], 0, "wavenumber"),
                          parse_double(meta["impedance_ohm"], 0, "impedance"), freq);
    } else {
        med = Medium::free_space(freq);
    }
    try {
        med.validate();
    } catch (const std::invalid_argument& ex) {
        throw FormatError(std::string("field file: ") + ex.what());
    }

    std::shared_ptr<const SphereGrid> grid;
    try {
        grid = std::make_shared<const SphereGrid>(n_theta, n_phi, radius);
    } catch (const std::invalid_argument& ex) {
        throw FormatError(std::string("field file: ") + ex.what());
    }
    if (grid->l_max() < grid_lmax) {
        throw FormatError("field file: declared grid_lmax " + std::to_string(grid_lmax) +
                          " exceeds what n_theta x n_phi supports");
    }
    if (rows.size() != grid->size()) {
        throw FormatError("field file: expected " + std::to_string(grid->size()) + " rows (n_theta x n_phi), got " +
                          std::to_string(rows.size()));
    }

    FieldFile f{freq, grid_lmax, grid, FieldSamples(grid, FieldKind::electric, med),
                FieldSamples(grid, FieldKind::magnetic, med), {}};
    if (meta.count("band_limit")) {
        const int band = static_cast<int>(parse_double(meta["band_limit"], 0, "band_limit"));
        f.e.band_limit = f.h.band_limit = band;
    }

    std::array<int, 6> filled{};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& cells = rows[i];
        const std::size_t row = i + 1;
        if (cells.size() != 15) {
            throw FormatError("field file row " + std::to_string(row) + ": expected 15 columns, got " +
                              std::to_string(cells.size()));
        }
        const Direction d = grid->node(i);
        const double theta = parse_double(cells[0], row, "theta");
        const double phi = parse_double(cells[1], row, "phi");
        if (std::abs(theta - d.theta) > 1e-12 || std::abs(phi - d.phi) > 1e-12) {
            throw FormatError("field file row " + std::to_string(row) +
                              ": node does not match the declared grid (theta-major ordering expected)");
        }
        for (std::size_t c = 0; c < 6; ++c) {
            const std::string& re = cells[3 + 2 * c];
            const std::string& im = cells[4 + 2 * c];
            if (re.empty() && im.empty()) continue;
            if (re.empty() || im.empty()) {
                throw FormatError("field file row " + std::to_string(row) + ": " + kComponentNames[c] +
                                  " has only one of re/im");
            }
            component(f, c).set(i, {parse_double(re, row, kComponentNames[c]),
                                    parse_double(im, row, kComponentNames[c])});
            ++filled[c];
        }
    }
    for (std::size_t c = 0; c < 6; ++c) {
        if (filled[c] != 0 && static_cast<std::size_t>(filled[c]) != rows.size()) {
            throw FormatError(std::string("field file: ") + kComponentNames[c] + " present on only " +
                              std::to_string(filled[c]) + " of " + std::to_string(rows.size()) + " rows");
        }
        f.present[c] = filled[c] != 0;
    }
    return f;
}

void write_field_file(const std::string& path, const FieldFile& file) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write '" + path + "'");
    write_field_csv(out, file);
}

FieldFile read_field_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open field file '" + path + "'");
    return read_field_csv(in);
}

// ---------------------------------------------------------------------------
// Pattern files

void write_pattern_csv(std::ostream& os, const FarFieldPattern& pattern, const PatternOptions& options) {
    double peak = 0.0;
    if (options.normalize) {
        for (std::size_t i = 0; i < pattern.size(); ++i) peak = std::max(peak, std::sqrt(pattern.intensity(i)));
    }
    const double scale = (options.normalize && peak > 0.0) ? 1.0 / peak : 1.0;
    os << "theta_rad,phi_rad,abs_Etheta,abs_Ephi,arg_Etheta_rad,arg_Ephi_rad\n";
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        const Direction d = pattern.directions()[i];
        const cdouble et = pattern.e_theta()[i];
        const cdouble ep = pattern.e_phi()[i];
        os << format_number(d.theta) << ',' << format_number(d.phi) << ','
           << format_number(std::abs(et) * scale) << ',' << format_number(std::abs(ep) * scale) << ','
           << format_number(std::arg(et)) << ',' << format_number(std::arg(ep)) << "\n";
    }
}

void write_pattern_file(const std::string& path, const FarFieldPattern& pattern,
                        const PatternOptions& options) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write '" + path + "'");
    write_pattern_csv(out, pattern, options);
}

}  // namespace mpole::io
