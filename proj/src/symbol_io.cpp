#include "toeplitz_spectra/symbol_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "toeplitz_spectra/error.hpp"

namespace toeplitz {

namespace {

using nlohmann::json;

std::string location(std::string_view text, std::size_t offset)
{
    offset = std::min(offset, text.size());
    int line = 1, col = 1;
    for (std::size_t i = 0; i < offset; ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

[[noreturn]] void fail_at(std::string_view text, std::size_t offset, const std::string& what)
{
    throw Error(Errc::ParseError, location(text, offset) + ": " + what);
}

// position of a key in the source, for semantic errors
std::size_t key_offset(std::string_view text, const std::string& key)
{
    const std::size_t p = text.find("\"" + key + "\"");
    return p == std::string_view::npos ? 0 : p;
}

double number(const json& v, std::string_view text, const std::string& key)
{
    if (!v.is_number())
        fail_at(text, key_offset(text, key), "expected a number in \"" + key + "\"");
    return v.get<double>();
}

} // namespace

TrigSymbol parse_symbol(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        std::string msg = e.what();
        const std::size_t p = msg.find(": ", msg.find("parse error"));
        if (p != std::string::npos)
            msg = msg.substr(p + 2);
        fail_at(text, e.byte == 0 ? 0 : e.byte - 1, msg);
    }
    if (!doc.is_object())
        fail_at(text, text.find_first_not_of(" \t\r\n") == std::string_view::npos ? 0 : text.find_first_not_of(" \t\r\n"),
                "symbol must be a JSON object");

    for (const auto& [key, value] : doc.items())
        if (key != "coeffs" && key != "offset" && key != "cosine")
            fail_at(text, key_offset(text, key), "unknown key \"" + key + "\"");

    const bool has_cos = doc.contains("cosine");
    const bool has_coeffs = doc.contains("coeffs");
    if (has_cos == has_coeffs)
        fail_at(text, 0, "exactly one of \"cosine\" and \"coeffs\" is required");

    try {
        if (has_cos) {
            if (doc.contains("offset"))
                fail_at(text, key_offset(text, "offset"), "\"offset\" only applies to \"coeffs\"");
            const json& c = doc["cosine"];
            if (!c.is_array() || c.empty())
                fail_at(text, key_offset(text, "cosine"), "\"cosine\" must be a non-empty array");
            std::vector<double> v;
            for (const json& x : c)
                v.push_back(number(x, text, "cosine"));
            return TrigSymbol::cosine(v);
        }
        const json& c = doc["coeffs"];
        if (!c.is_array() || c.empty())
            fail_at(text, key_offset(text, "coeffs"), "\"coeffs\" must be a non-empty array");
        ComplexVector v;
        for (const json& x : c) {
            if (x.is_array()) {
                if (x.size() != 2)
                    fail_at(text, key_offset(text, "coeffs"), "complex entries are [re, im] pairs");
                v.emplace_back(number(x[0], text, "coeffs"), number(x[1], text, "coeffs"));
            } else {
                v.emplace_back(number(x, text, "coeffs"), 0.0);
            }
        }
        int offset = -(static_cast<int>(v.size()) - 1) / 2;
        if (doc.contains("offset")) {
            const json& o = doc["offset"];
            if (!o.is_number_integer())
                fail_at(text, key_offset(text, "offset"), "\"offset\" must be an integer");
            offset = o.get<int>();
        }
        return TrigSymbol::from_range(v, offset);
    } catch (const Error& e) {
        if (e.code() == Errc::ParseError)
            throw;
        throw Error(Errc::ParseError, location(text, 0) + ": " + e.what(), e.value());
    }
}

TrigSymbol load_symbol(const std::string& spec)
{
    if (!spec.empty() && spec[0] == '@') {
        std::ifstream in(spec.substr(1));
        if (!in)
            throw Error(Errc::ParseError, "cannot read symbol file " + spec.substr(1));
        std::ostringstream ss;
        ss << in.rdbuf();
        return parse_symbol(ss.str());
    }
    return parse_symbol(spec);
}

std::string symbol_to_json(const TrigSymbol& sym)
{
    json c = json::array();
    for (const Complex& z : sym.coeffs())
        c.push_back({z.real(), z.imag()});
    json doc;
    doc["coeffs"] = c;
    doc["offset"] = -sym.degree();
    return doc.dump();
}

} // namespace toeplitz
