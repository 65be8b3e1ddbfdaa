#pragma once

#include <iosfwd>
#include <string>

#include "matprobe/symbol.hpp"

namespace matprobe {

/// Plain-text symbol table:
///
///   # matprobe symbol dim=<d> band=<ξ₀>
///   x_index,xi_index,real,imag
///   0,0,<re>,<im>
///   ...
///
/// Values are written with 17 significant digits so a write/read round trip is exact.
void write_symbol_csv(std::ostream& out, const DiscreteSymbol& a);
DiscreteSymbol read_symbol_csv(std::istream& in);

void save_symbol(const std::string& path, const DiscreteSymbol& a);
DiscreteSymbol load_symbol(const std::string& path);

}  // namespace matprobe
