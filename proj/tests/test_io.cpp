#include "doctest.h"

#include "mpole/io.hpp"
#include "test_support.hpp"

#include <sstream>

using namespace mpole;
using mpole::testing::random_coeffs;

namespace {

const Medium kMedium = io::medium_from(2.0 * kPi, kVacuumImpedance, 299792458.0);

io::FieldFile sample_file() {
    const CoefficientSet c = random_coeffs(3, kMedium, 4);
    return io::make_field_file(synthesize(c, 0.4, make_grid(4, 1.0)), 299792458.0);
}

std::string csv(const io::FieldFile& f) {
    std::ostringstream os;
    io::write_field_csv(os, f);
    return os.str();
}

io::FieldFile parse_csv(const std::string& text) {
    std::istringstream is(text);
    return io::read_field_csv(is);
}

std::string replace_first(std::string s, const std::string& from, const std::string& to) {
    const auto at = s.find(from);
    REQUIRE(at != std::string::npos);
    return s.replace(at, from.size(), to);
}

}  // namespace

TEST_CASE("coefficient JSON round trip is exact and byte-stable") {
    const io::CoeffFile f{io::kCoeffSchemaVersion, 3e8, random_coeffs(4, kMedium, 12)};
    const std::string text = io::to_json(f);
    const io::CoeffFile back = io::parse_coeff_json(text);
    CHECK(back.frequency_hz == 3e8);
    CHECK(back.coeffs.medium().k == kMedium.k);
    CHECK(back.coeffs.medium().z0 == kMedium.z0);
    for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
        CHECK(back.coeffs.a_e()[i] == f.coeffs.a_e()[i]);
        CHECK(back.coeffs.a_m()[i] == f.coeffs.a_m()[i]);
    }
    CHECK(io::to_json(back) == text);
    CHECK(text.find("\"schema_version\": \"1.0\"") != std::string::npos);
    CHECK(text.find("\"l\": 1") < text.find("\"l\": 2"));
}

TEST_CASE("coefficient JSON errors") {
    const io::CoeffFile f{io::kCoeffSchemaVersion, 3e8, random_coeffs(1, kMedium, 1)};
    const std::string good = io::to_json(f);
    CHECK_THROWS_AS(io::parse_coeff_json("{"), io::FormatError);
    CHECK_THROWS_AS(io::parse_coeff_json(replace_first(good, "\"1.0\"", "\"2.0\"")), io::FormatError);
    CHECK_THROWS_AS(io::parse_coeff_json(replace_first(good, "\"m\": 1", "\"m\": 0")), io::FormatError);
    CHECK_THROWS_AS(io::parse_coeff_json(replace_first(good, "\"m\": 1", "\"m\": 2")), io::FormatError);
    CHECK_THROWS_AS(io::parse_coeff_json(replace_first(good, "\"l_max\": 1", "\"l_max\": 2")), io::FormatError);
    CHECK_THROWS_AS(io::parse_coeff_json(replace_first(good, "\"aM\"", "\"bM\"")), io::FormatError);
    CHECK_THROWS_AS(io::read_coeff_file("/nonexistent/file.json"), io::FormatError);
}

TEST_CASE("field CSV round trip") {
    const io::FieldFile f = sample_file();
    const std::string text = csv(f);
    const io::FieldFile back = parse_csv(text);
    CHECK(back.grid_lmax == 4);
    CHECK(back.grid->radius() == 0.4);
    CHECK(back.e.band_limit == 3);
    for (int c = 0; c < 6; ++c) CHECK(back.has(static_cast<io::Component>(c)));
    for (std::size_t i = 0; i < f.grid->size(); ++i) {
        for (int c = 0; c < 3; ++c) {
            CHECK(back.e.at(i)[c] == f.e.at(i)[c]);
            CHECK(back.h.at(i)[c] == f.h.at(i)[c]);
        }
    }
    CHECK(csv(back) == text);
}

TEST_CASE("absent components round trip as empty cells") {
    io::FieldFile f = sample_file();
    f.present = {true, false, false, false, false, false};
    const io::FieldFile back = parse_csv(csv(f));
    CHECK(back.has(io::Er));
    CHECK_FALSE(back.has(io::Hr));
    CHECK_FALSE(back.has(io::Etheta));
    CHECK(mpole::testing::max_abs(back.h) == 0.0);
}

TEST_CASE("field CSV errors") {
    const std::string good = csv(sample_file());
    CHECK_THROWS_AS(parse_csv(replace_first(good, "# radius_m=", "# radius=")), io::FormatError);
    CHECK_THROWS_AS(parse_csv(replace_first(good, "theta_rad,", "theta,")), io::FormatError);
    // drop the last row
    std::string short_file = good.substr(0, good.rfind('\n', good.size() - 2) + 1);
    CHECK_THROWS_AS(parse_csv(short_file), io::FormatError);
    // a node off the grid
    const auto header_end = good.find("Hphi_im\n") + 8;
    std::string moved = good;
    moved.replace(header_end, 1, "9");
    CHECK_THROWS_AS(parse_csv(moved), io::FormatError);
    // component present on some rows only: blank E_r on the first data row
    std::string partial = good;
    std::size_t pos = header_end;
    for (int i = 0; i < 3; ++i) pos = partial.find(',', pos) + 1;
    const std::size_t end = partial.find(',', partial.find(',', pos) + 1);
    partial.replace(pos, end - pos, ",");
    CHECK_THROWS_WITH_AS(parse_csv(partial), doctest::Contains("present on only"), io::FormatError);
    CHECK_THROWS_AS(io::read_field_file("/nonexistent/f.csv"), io::FormatError);
}

TEST_CASE("pattern CSV") {
    CoefficientSet c(1, kMedium);
    c.set_a_e(1, 0, 1.0);
    const std::vector<Direction> dirs = {{0.5, 0.0}, {kPi / 2, 0.0}};
    std::ostringstream raw, norm;
    io::write_pattern_csv(raw, far_field(c, dirs));
    io::write_pattern_csv(norm, far_field(c, dirs), {true});
    CHECK(raw.str().rfind("theta_rad,phi_rad,abs_Etheta,abs_Ephi,arg_Etheta_rad,arg_Ephi_rad\n", 0) == 0);
    CHECK(norm.str().find("\n1.5707963267948966,0,1,0,") != std::string::npos);
}

TEST_CASE("number formatting keeps 17 significant digits") {
    CHECK(io::format_number(0.1) == "0.10000000000000001");
    CHECK(std::stod(io::format_number(kPi)) == kPi);
}
