#pragma once

#include <string>
#include <string_view>

#include "toeplitz_spectra/symbol.hpp"

namespace toeplitz {

/// Symbol literal: {"coeffs": [[re, im], ...], "offset": -d} listing
/// a(offset), a(offset + 1), ... (plain numbers allowed for real entries), or
/// {"cosine": [c0, c1, ...]} for sum_j c_j cos(j theta).
/// Throws ParseError; the message starts with "line L, column C" when the
/// problem can be located in the text.
TrigSymbol parse_symbol(std::string_view text);

/// parse_symbol on `spec`, or on the contents of a file for "@path".
TrigSymbol load_symbol(const std::string& spec);

/// Coefficient form accepted by parse_symbol.
std::string symbol_to_json(const TrigSymbol& sym);

} // namespace toeplitz
