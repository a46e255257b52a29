#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "xyz/css.hpp"
#include "xyz/gf2.hpp"
#include "xyz/stabilizer.hpp"

namespace xyz {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// "rows cols" followed by one line of 0/1 characters per row.
void write_matrix(std::ostream& out, const BitMatrix& m);
BitMatrix read_matrix(std::istream& in);

/// Coordinate list: "rows cols nnz" then one "r c" line per set bit.
void write_sparse(std::ostream& out, const BitMatrix& m);
BitMatrix read_sparse(std::istream& in);

/// Labeled matrix blocks "Hx" and "Hz".
void write_css(std::ostream& out, const CssCode& code);
CssCode read_css(std::istream& in);

/// One-line JSON header (family_tag, n, lengths, qubit_blocks, check_blocks,
/// product, seeds), then labeled "Hx"/"Hz" blocks, then "Hx1", "Hz1", "Hx2",
/// "Hz2" when the seed codes are known.
void write_code(std::ostream& out, const StabilizerCode& code);
/// Throws ParseError on malformed input. Does not check commutation.
StabilizerCode read_code(std::istream& in);

void save_code(const std::string& path, const StabilizerCode& code);
StabilizerCode load_code(const std::string& path);

}  // namespace xyz
