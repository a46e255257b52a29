#include "xyz/serialize.hpp"

#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace xyz {

namespace {

using nlohmann::json;

std::string next_line(std::istream& in, const char* what) {
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") != std::string::npos) return line;
  }
  throw ParseError(std::string("unexpected end of input while reading ") + what);
}

template <typename... T>
void parse_ints(const std::string& line, const char* what, T&... out) {
  std::istringstream is(line);
  ((is >> out), ...);
  std::string rest;
  if (!is || (is >> rest)) throw ParseError(std::string("bad ") + what + " line '" + line + "'");
}

void expect_label(std::istream& in, const std::string& label) {
  const std::string line = next_line(in, label.c_str());
  if (line != label) throw ParseError("expected block '" + label + "', found '" + line + "'");
}

json blocks_json(const std::vector<Block>& blocks) {
  json a = json::array();
  for (const auto& b : blocks) a.push_back({{"name", b.name}, {"size", b.size}});
  return a;
}

std::vector<Block> blocks_from(const json& a) {
  std::vector<Block> out;
  for (const auto& b : a) out.push_back({b.at("name").get<std::string>(), b.at("size").get<std::size_t>()});
  return out;
}

}  // namespace

void write_matrix(std::ostream& out, const BitMatrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  std::string line(m.cols(), '0');
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::fill(line.begin(), line.end(), '0');
    for (std::size_t c : m.row_support(r)) line[c] = '1';
    out << line << '\n';
  }
}

BitMatrix read_matrix(std::istream& in) {
  std::size_t rows = 0, cols = 0;
  parse_ints(next_line(in, "matrix header"), "matrix header", rows, cols);
  BitMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string line = next_line(in, "matrix row");
    if (line.size() != cols) throw ParseError("matrix row " + std::to_string(r) + " has wrong length");
    for (std::size_t c = 0; c < cols; ++c) {
      if (line[c] == '1') {
        m.set(r, c);
      } else if (line[c] != '0') {
        throw ParseError("matrix row " + std::to_string(r) + " contains '" + line[c] + "'");
      }
    }
  }
  return m;
}

void write_sparse(std::ostream& out, const BitMatrix& m) {
  std::size_t nnz = 0;
  for (std::size_t r = 0; r < m.rows(); ++r) nnz += m.row_support(r).size();
  out << m.rows() << ' ' << m.cols() << ' ' << nnz << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c : m.row_support(r)) out << r << ' ' << c << '\n';
}

BitMatrix read_sparse(std::istream& in) {
  std::size_t rows = 0, cols = 0, nnz = 0;
  parse_ints(next_line(in, "sparse header"), "sparse header", rows, cols, nnz);
  BitMatrix m(rows, cols);
  for (std::size_t i = 0; i < nnz; ++i) {
    std::size_t r = 0, c = 0;
    parse_ints(next_line(in, "sparse entry"), "sparse entry", r, c);
    if (r >= rows || c >= cols) throw ParseError("sparse entry out of range");
    m.set(r, c);
  }
  return m;
}

void write_css(std::ostream& out, const CssCode& code) {
  out << "Hx\n";
  write_matrix(out, code.hx);
  out << "Hz\n";
  write_matrix(out, code.hz);
}

CssCode read_css(std::istream& in) {
  CssCode code;
  expect_label(in, "Hx");
  code.hx = read_matrix(in);
  expect_label(in, "Hz");
  code.hz = read_matrix(in);
  if (code.hx.cols() != code.hz.cols()) throw ParseError("Hx and Hz have different column counts");
  return code;
}

void write_code(std::ostream& out, const StabilizerCode& code) {
  json header = {{"family_tag", code.family_tag},
                 {"n", code.n()},
                 {"lengths", code.lengths},
                 {"qubit_blocks", blocks_json(code.qubit_blocks)},
                 {"check_blocks", blocks_json(code.check_blocks)},
                 {"product", code.product},
                 {"seeds", code.seeds.has_value()}};
  out << header.dump() << '\n';
  out << "Hx\n";
  write_matrix(out, code.hx);
  out << "Hz\n";
  write_matrix(out, code.hz);
  if (code.seeds) {
    const auto& s = *code.seeds;
    for (auto [label, m] : {std::pair{"Hx1", &s.css1.hx}, {"Hz1", &s.css1.hz}, {"Hx2", &s.css2.hx}, {"Hz2", &s.css2.hz}}) {
      out << label << '\n';
      write_matrix(out, *m);
    }
  }
}

StabilizerCode read_code(std::istream& in) {
  StabilizerCode code;
  bool has_seeds = false;
  std::size_t n = 0;
  try {
    const json header = json::parse(next_line(in, "header"));
    code.family_tag = header.at("family_tag").get<std::string>();
    n = header.at("n").get<std::size_t>();
    code.lengths = header.value("lengths", std::vector<std::size_t>{});
    code.qubit_blocks = blocks_from(header.at("qubit_blocks"));
    code.check_blocks = blocks_from(header.at("check_blocks"));
    code.product = header.value("product", std::string{});
    has_seeds = header.value("seeds", false);
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad header: ") + e.what());
  }
  expect_label(in, "Hx");
  code.hx = read_matrix(in);
  expect_label(in, "Hz");
  code.hz = read_matrix(in);
  if (code.hx.cols() != n || code.hz.cols() != n || code.hx.rows() != code.hz.rows())
    throw ParseError("matrix shapes disagree with the header");
  if (has_seeds) {
    Product4Spec s;
    for (auto [label, m] : {std::pair{"Hx1", &s.css1.hx}, {"Hz1", &s.css1.hz}, {"Hx2", &s.css2.hx}, {"Hz2", &s.css2.hz}}) {
      expect_label(in, label);
      *m = read_matrix(in);
    }
    code.seeds = std::move(s);
  }
  try {
    validate_layout(code);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return code;
}

void save_code(const std::string& path, const StabilizerCode& code) {
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot open '" + path + "' for writing");
  write_code(out, code);
  if (!out) throw std::ios_base::failure("write to '" + path + "' failed");
}

StabilizerCode load_code(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open '" + path + "'");
  return read_code(in);
}

}  // namespace xyz
