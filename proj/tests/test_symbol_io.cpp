#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <string>

#include "toeplitz_spectra/error.hpp"
#include "toeplitz_spectra/symbol_io.hpp"

using namespace toeplitz;

namespace {

std::string parse_message(const std::string& text)
{
    try {
        parse_symbol(text);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::ParseError);
        return e.what();
    }
    FAIL("expected ParseError");
    return {};
}

} // namespace

TEST_CASE("symbol literal cosine")
{
    const TrigSymbol s = parse_symbol(R"({"cosine": [1.25, -1]})");
    CHECK(s.degree() == 1);
    CHECK(s.coeff(0).real() == doctest::Approx(1.25));
    CHECK(s.coeff(1).real() == doctest::Approx(-0.5));
    CHECK(s(0.0) == doctest::Approx(0.25));
}

TEST_CASE("symbol literal coefficients")
{
    const TrigSymbol s = parse_symbol(R"({"coeffs": [[0.5, 0.25], [2, 0], [0.5, -0.25]], "offset": -1})");
    CHECK(s.degree() == 1);
    CHECK(std::abs(s.coeff(-1) - Complex(0.5, 0.25)) < 1e-15);
    CHECK(std::abs(s.coeff(1) - Complex(0.5, -0.25)) < 1e-15);

    const TrigSymbol r = parse_symbol(R"({"coeffs": [-0.5, 1.25, -0.5]})");
    CHECK(r.degree() == 1);
    CHECK(r.coeff(-1).real() == doctest::Approx(-0.5));
}

TEST_CASE("symbol literal round trip")
{
    const TrigSymbol s = parse_symbol(R"({"cosine": [3, -1, 0.25, 0.125]})");
    const TrigSymbol t = parse_symbol(symbol_to_json(s));
    REQUIRE(t.degree() == s.degree());
    for (int j = -3; j <= 3; ++j)
        CHECK(t.coeff(j) == s.coeff(j));
}

TEST_CASE("symbol literal errors carry a position")
{
    CHECK(parse_message("{\"cosine\": [1.25,").find("line 1, column 18") != std::string::npos);
    CHECK(parse_message("{\n  \"cosine\": [1, 2],\n  \"bad\": 3\n}").find("line 3, column 3") != std::string::npos);
    CHECK(parse_message("{\n\"cosine\": [1, \"x\"]}").find("line 2, column 1") != std::string::npos);
    CHECK(parse_message("[1, 2]").find("line 1, column 1") != std::string::npos);
    CHECK(parse_message("{}").find("exactly one") != std::string::npos);
    CHECK(parse_message(R"({"cosine": [1], "coeffs": [1]})").find("exactly one") != std::string::npos);
    CHECK(parse_message(R"({"coeffs": [[1, 2, 3]]})").find("pairs") != std::string::npos);
    // not Hermitian
    parse_message(R"({"coeffs": [[1, 0], [1, 0], [2, 0]], "offset": -1})");
}

TEST_CASE("symbol literal from file")
{
    const std::string path = "symbol_io_test.json";
    {
        std::ofstream f(path);
        f << R"({"cosine": [2, -2]})";
    }
    const TrigSymbol s = load_symbol("@" + path);
    CHECK(s(kPi) == doctest::Approx(4.0));
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_symbol("@" + path), Error);
}
