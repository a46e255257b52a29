#include "xyz/products.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>
#include <string>

#include "xyz/classical.hpp"

namespace xyz {

namespace {

struct Entry {
  std::size_t qblock;
  Pauli pauli;
  BitMatrix m;
};

struct CheckBlockSpec {
  std::string name;
  std::size_t rows;
  std::vector<Entry> entries;
};

void paste_xor(BitMatrix& dst, std::size_t r0, std::size_t c0, const BitMatrix& src) {
  for (std::size_t r = 0; r < src.rows(); ++r)
    for (std::size_t c : src.row_support(r)) dst.flip(r0 + r, c0 + c);
}

StabilizerCode assemble(std::vector<Block> qblocks, const std::vector<CheckBlockSpec>& cblocks) {
  std::vector<std::size_t> offset{0};
  for (const auto& b : qblocks) offset.push_back(offset.back() + b.size);
  std::size_t rows = 0;
  for (const auto& cb : cblocks) rows += cb.rows;

  StabilizerCode code;
  code.hx = BitMatrix(rows, offset.back());
  code.hz = BitMatrix(rows, offset.back());
  std::size_t r0 = 0;
  for (const auto& cb : cblocks) {
    for (const auto& e : cb.entries) {
      if (e.m.rows() != cb.rows || e.m.cols() != qblocks[e.qblock].size)
        throw std::logic_error("block " + cb.name + "/" + qblocks[e.qblock].name + " has shape " +
                               std::to_string(e.m.rows()) + "x" + std::to_string(e.m.cols()));
      if (e.pauli == Pauli::X || e.pauli == Pauli::Y) paste_xor(code.hx, r0, offset[e.qblock], e.m);
      if (e.pauli == Pauli::Z || e.pauli == Pauli::Y) paste_xor(code.hz, r0, offset[e.qblock], e.m);
    }
    code.check_blocks.push_back({cb.name, cb.rows});
    r0 += cb.rows;
  }
  code.qubit_blocks = std::move(qblocks);
  return code;
}

BitMatrix eye(std::size_t n) { return BitMatrix::identity(n); }

BitMatrix kron3(const BitMatrix& a, const BitMatrix& b, const BitMatrix& c) { return kron(kron(a, b), c); }

void check_seeds(const Product4Spec& spec) {
  validate_css(spec.css1);
  validate_css(spec.css2);
}

void require_built(const StabilizerCode& code) {
  validate_layout(code);
  if (!verify_commutation(code)) throw std::logic_error("constructed code has anticommuting checks");
}

// Inverse by eliminating [M | I].
std::optional<BitMatrix> inverse(const BitMatrix& m) {
  const std::size_t k = m.rows();
  RowEchelon re = row_reduce(hstack({m, eye(k)}));
  if (re.pivots.size() < k || (k > 0 && re.pivots[k - 1] >= k)) return std::nullopt;
  BitMatrix inv(k, k);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < k; ++c)
      if (re.reduced.get(r, k + c)) inv.set(r, c);
  return inv;
}

}  // namespace

StabilizerCode xyz3(const BitMatrix& h1, const BitMatrix& h2, const BitMatrix& h3) {
  const std::size_t m1 = h1.rows(), n1 = h1.cols();
  const std::size_t m2 = h2.rows(), n2 = h2.cols();
  const std::size_t m3 = h3.rows(), n3 = h3.cols();
  const BitMatrix h1t = transpose(h1), h2t = transpose(h2), h3t = transpose(h3);
  enum { A, B, C, D };
  StabilizerCode code = assemble(
      {{"A", n1 * n2 * n3}, {"B", m1 * m2 * n3}, {"C", m1 * n2 * m3}, {"D", n1 * m2 * m3}},
      {
          {"S", m1 * n2 * n3,
           {{A, Pauli::X, kron3(h1, eye(n2), eye(n3))},
            {B, Pauli::Y, kron3(eye(m1), h2t, eye(n3))},
            {C, Pauli::Z, kron3(eye(m1), eye(n2), h3t)}}},
          {"T", n1 * m2 * n3,
           {{A, Pauli::Y, kron3(eye(n1), h2, eye(n3))},
            {B, Pauli::X, kron3(h1t, eye(m2), eye(n3))},
            {D, Pauli::Z, kron3(eye(n1), eye(m2), h3t)}}},
          {"U", n1 * n2 * m3,
           {{A, Pauli::Z, kron3(eye(n1), eye(n2), h3)},
            {C, Pauli::X, kron3(h1t, eye(n2), eye(m3))},
            {D, Pauli::Y, kron3(eye(n1), h2t, eye(m3))}}},
          {"V", m1 * m2 * m3,
           {{B, Pauli::Z, kron3(eye(m1), eye(m2), h3)},
            {C, Pauli::Y, kron3(eye(m1), h2, eye(m3))},
            {D, Pauli::X, kron3(h1, eye(m2), eye(m3))}}},
      });
  code.family_tag = "xyz3";
  require_built(code);
  return code;
}

StabilizerCode xyz4(const Product4Spec& spec) {
  check_seeds(spec);
  const BitMatrix& c = spec.css1.hx;
  const BitMatrix& d = spec.css1.hz;
  const BitMatrix& b = spec.css2.hx;
  const BitMatrix& a = spec.css2.hz;
  const std::size_t m1 = c.rows(), m2 = d.rows(), na = c.cols();
  const std::size_t m3 = b.rows(), m4 = a.rows(), nb = b.cols();
  const BitMatrix at = transpose(a), bt = transpose(b), ct = transpose(c), dt = transpose(d);
  enum { A, B, C, D, E };
  StabilizerCode code = assemble(
      {{"A", m1 * m4}, {"B", m1 * m3}, {"C", na * nb}, {"D", m2 * m4}, {"E", m2 * m3}},
      {
          {"S", m1 * nb,
           {{A, Pauli::X, kron(eye(m1), at)}, {B, Pauli::Y, kron(eye(m1), bt)}, {C, Pauli::Z, kron(c, eye(nb))}}},
          {"T", na * m4,
           {{A, Pauli::Y, kron(ct, eye(m4))}, {C, Pauli::X, kron(eye(na), a)}, {D, Pauli::Z, kron(dt, eye(m4))}}},
          {"U", na * m3,
           {{B, Pauli::Z, kron(ct, eye(m3))}, {C, Pauli::X, kron(eye(na), b)}, {E, Pauli::Y, kron(dt, eye(m3))}}},
          {"V", m2 * nb,
           {{C, Pauli::Z, kron(d, eye(nb))}, {D, Pauli::Y, kron(eye(m2), at)}, {E, Pauli::X, kron(eye(m2), bt)}}},
      });
  code.family_tag = "xyz4";
  code.product = "xyz4";
  code.seeds = spec;
  require_built(code);
  return code;
}

bool is_xyz4(const StabilizerCode& code) { return code.product == "xyz4" && code.seeds.has_value(); }

StabilizerCode homological4(const Product4Spec& spec) {
  check_seeds(spec);
  const BitMatrix& c = spec.css1.hx;
  const BitMatrix& d = spec.css1.hz;
  const BitMatrix& b = spec.css2.hx;
  const BitMatrix& a = spec.css2.hz;
  const std::size_t m1 = c.rows(), m2 = d.rows(), na = c.cols();
  const std::size_t m3 = b.rows(), m4 = a.rows(), nb = b.cols();
  enum { A, C, E };
  StabilizerCode code = assemble(
      {{"A", m1 * m4}, {"C", na * nb}, {"E", m2 * m3}},
      {
          {"S", m1 * nb, {{A, Pauli::X, kron(eye(m1), transpose(a))}, {C, Pauli::X, kron(c, eye(nb))}}},
          {"T", na * m4, {{A, Pauli::Z, kron(transpose(c), eye(m4))}, {C, Pauli::Z, kron(eye(na), a)}}},
          {"U", na * m3, {{C, Pauli::X, kron(eye(na), b)}, {E, Pauli::X, kron(transpose(d), eye(m3))}}},
          {"V", m2 * nb, {{C, Pauli::Z, kron(d, eye(nb))}, {E, Pauli::Z, kron(eye(m2), transpose(b))}}},
      });
  code.family_tag = "homological4";
  code.product = "homological4";
  code.seeds = spec;
  require_built(code);
  return code;
}

std::size_t dimension_formula(const Product4Spec& spec) {
  check_seeds(spec);
  const auto& [hx1, hz1] = spec.css1;
  const auto& [hx2, hz2] = spec.css2;
  const auto na = static_cast<std::int64_t>(hx1.cols()), nb = static_cast<std::int64_t>(hx2.cols());
  const auto m12 = static_cast<std::int64_t>(hx1.rows() + hz1.rows());
  const auto m34 = static_cast<std::int64_t>(hx2.rows() + hz2.rows());
  const auto ker1 = static_cast<std::int64_t>(kernel_dim(vstack({hx1, hz1})));
  const auto ker2 = static_cast<std::int64_t>(kernel_dim(vstack({hx2, hz2})));
  const auto lker1 = static_cast<std::int64_t>(kernel_dim(hstack({transpose(hz1), transpose(hx1)})));
  const auto lker2 = static_cast<std::int64_t>(kernel_dim(hstack({transpose(hz2), transpose(hx2)})));
  const std::int64_t k = (na - m12) * (nb - m34) + lker1 * ker2 + ker1 * lker2;
  if (k < 0) throw std::logic_error("negative dimension formula");
  return static_cast<std::size_t>(k);
}

std::vector<std::size_t> block_major_permutation(std::size_t p1, std::size_t p2, std::size_t q1, std::size_t q2) {
  const std::size_t q = q1 + q2;
  const std::size_t off[4] = {0, p1 * q1, p1 * q, p1 * q + p2 * q1};
  std::vector<std::size_t> perm((p1 + p2) * q);
  for (std::size_t s = 0; s < p1 + p2; ++s) {
    for (std::size_t t = 0; t < q; ++t) {
      const bool lo_s = s < p1, lo_t = t < q1;
      const std::size_t ss = lo_s ? s : s - p1;
      const std::size_t tt = lo_t ? t : t - q1;
      const std::size_t blk = (lo_s ? 0 : 2) + (lo_t ? 0 : 1);
      perm[s * q + t] = off[blk] + ss * (lo_t ? q1 : q2) + tt;
    }
  }
  return perm;
}

namespace {

struct ClosedForms {
  std::vector<PauliError> xs, zs;
};

ClosedForms closed_forms(const Product4Spec& spec) {
  check_seeds(spec);
  const BitMatrix& c = spec.css1.hx;
  const BitMatrix& d = spec.css1.hz;
  const BitMatrix& b = spec.css2.hx;
  const BitMatrix& a = spec.css2.hz;
  const std::size_t m1 = c.rows(), m2 = d.rows(), na = c.cols();
  const std::size_t m3 = b.rows(), m4 = a.rows(), nb = b.cols();
  const std::size_t off_a = 0, off_b = m1 * m4, off_c = off_b + m1 * m3, off_d = off_c + na * nb,
                    off_e = off_d + m2 * m4, n = off_e + m2 * m3;

  std::vector<PauliError> xs, zs;

  // Operators on block C.
  const BitMatrix seed1 = vstack({c, d}), seed2 = vstack({b, a});
  const auto ker1 = kernel_basis(seed1), ker2 = kernel_basis(seed2);
  const auto comp1 = complement_basis(seed1, na), comp2 = complement_basis(seed2, nb);
  auto on_c = [&](const BitVector& left, const BitVector& right, bool zpart) {
    PauliError e(n);
    for (std::size_t i : left.support())
      for (std::size_t j : right.support()) (zpart ? e.z : e.x).set(off_c + i * nb + j);
    return e;
  };
  for (const auto& alpha : ker1)
    for (const auto& beta : comp2) xs.push_back(on_c(alpha, beta, false));
  for (const auto& gamma : comp1)
    for (const auto& delta : ker2) zs.push_back(on_c(gamma, delta, true));

  // Operators on blocks A, B, D, E. A vector in F^(m1+m2) (x) F^(m3+m4) is
  // split block-major into u1 v3 -> B, u1 v4 -> A, u2 v3 -> E, u2 v4 -> D.
  const auto perm = block_major_permutation(m1, m2, m3, m4);
  const std::size_t seg_off[4] = {off_b, off_a, off_e, off_d};
  const std::size_t seg_start[4] = {0, m1 * m3, m1 * (m3 + m4), m1 * (m3 + m4) + m2 * m3};
  auto mixed = [&](const BitVector& u, const BitVector& v, const Pauli (&paulis)[4]) {
    PauliError e(n);
    const std::size_t q = m3 + m4;
    for (std::size_t s : u.support()) {
      for (std::size_t t : v.support()) {
        const std::size_t pos = perm[s * q + t];
        std::size_t seg = 3;
        while (pos < seg_start[seg]) --seg;
        e.set(seg_off[seg] + pos - seg_start[seg], paulis[seg]);
      }
    }
    return e;
  };
  const auto lker1 = kernel_basis(hstack({transpose(c), transpose(d)}));
  const auto lker2 = kernel_basis(hstack({transpose(b), transpose(a)}));
  const auto cocomp1 = complement_basis(transpose(seed1), m1 + m2);
  const auto cocomp2 = complement_basis(transpose(seed2), m3 + m4);
  // Segment order B, A, E, D.
  const Pauli x_form[4] = {Pauli::Y, Pauli::X, Pauli::X, Pauli::Y};
  const Pauli z_form[4] = {Pauli::Z, Pauli::Y, Pauli::Y, Pauli::Z};
  for (const auto& u : lker1)
    for (const auto& v : cocomp2) xs.push_back(mixed(u, v, x_form));
  for (const auto& u : cocomp1)
    for (const auto& v : lker2) zs.push_back(mixed(u, v, z_form));

  return {std::move(xs), std::move(zs)};
}

}  // namespace

std::vector<PauliError> closed_form_operators(const Product4Spec& spec) {
  auto [xs, zs] = closed_forms(spec);
  xs.insert(xs.end(), std::make_move_iterator(zs.begin()), std::make_move_iterator(zs.end()));
  return xs;
}

LogicalBasis logical_basis_closed_form(const Product4Spec& spec) {
  auto [xs, zs] = closed_forms(spec);
  const std::size_t n = xs.empty() ? 0 : xs.front().n();
  if (xs.size() != zs.size()) throw std::logic_error("unequal numbers of X and Z logical candidates");
  const std::size_t k = xs.size();
  BitMatrix pairing(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (anticommute(xs[i], zs[j])) pairing.set(i, j);
  const auto inv = inverse(pairing);
  if (!inv) throw std::logic_error("logical candidates do not pair");

  LogicalBasis basis;
  basis.pairs.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    PauliError z(n);
    for (std::size_t j = 0; j < k; ++j)
      if (inv->get(j, i)) z *= zs[j];
    basis.pairs.push_back({std::move(xs[i]), std::move(z)});
  }
  return basis;
}

std::optional<std::size_t> span_min_weight(const std::vector<BitVector>& basis, std::size_t budget,
                                           std::uint64_t seed) {
  if (basis.empty()) return std::nullopt;
  if (basis.size() <= kExactSpanDim) return min_weight_of_span(basis);
  std::size_t best = SIZE_MAX;
  for (const auto& g : basis) best = std::min(best, g.popcount());
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t it = 0; it < budget; ++it) {
    BitVector v(basis.front().size());
    for (const auto& g : basis)
      if (coin(rng)) v ^= g;
    bool improved = true;
    while (improved) {
      improved = false;
      for (const auto& g : basis) {
        BitVector w = v ^ g;
        const std::size_t wt = w.popcount();
        if (wt > 0 && wt < v.popcount()) {
          v = std::move(w);
          improved = true;
        }
      }
    }
    if (v.any()) best = std::min(best, v.popcount());
  }
  return best;
}

KernelWeights kernel_weights(const Product4Spec& spec) {
  check_seeds(spec);
  const auto& [hx1, hz1] = spec.css1;
  const auto& [hx2, hz2] = spec.css2;
  return {
      span_min_weight(kernel_basis(vstack({hx1, hz1}))),
      span_min_weight(kernel_basis(vstack({hx2, hz2}))),
      span_min_weight(kernel_basis(hstack({transpose(hz1), transpose(hx1)}))),
      span_min_weight(kernel_basis(hstack({transpose(hz2), transpose(hx2)}))),
  };
}

std::size_t distance_upper_bound(const Product4Spec& spec) {
  const KernelWeights w = kernel_weights(spec);
  std::optional<std::size_t> best;
  for (const auto& d : {w.d1, w.d2, w.d3, w.d4})
    if (d && (!best || *d < *best)) best = d;
  if (!best) throw std::invalid_argument("bound undefined");
  return *best;
}

Product4Spec toric4_spec(std::size_t n1, std::size_t n2, std::size_t n3, std::size_t n4) {
  return {toric_2d(n1, n2), toric_2d(n3, n4)};
}

Product4Spec concat4_spec(std::size_t n1, std::size_t n2, std::size_t n3, std::size_t n4) {
  return {concatenated_rep(n1, n2), concatenated_rep(n3, n4)};
}

StabilizerCode chamon3(std::size_t n1, std::size_t n2, std::size_t n3) {
  StabilizerCode code = xyz3(repetition_check(n1, Boundary::Periodic).matrix,
                             repetition_check(n2, Boundary::Periodic).matrix,
                             repetition_check(n3, Boundary::Periodic).matrix);
  code.family_tag = "chamon3";
  code.lengths = {n1, n2, n3};
  return code;
}

StabilizerCode toric3(std::size_t n1, std::size_t n2, std::size_t n3) {
  const BitMatrix h1 = repetition_check(n1, Boundary::Periodic).matrix;
  const BitMatrix h2 = repetition_check(n2, Boundary::Periodic).matrix;
  const BitMatrix h3 = repetition_check(n3, Boundary::Periodic).matrix;
  const BitMatrix i1 = eye(n1), i2 = eye(n2), i3 = eye(n3);
  const BitMatrix h1t = transpose(h1), h2t = transpose(h2), h3t = transpose(h3);
  const std::size_t v = n1 * n2 * n3;
  // Vertices bound edges; faces are bounded by edges.
  CssCode css{
      hstack({kron3(h1, i2, i3), kron3(i1, h2, i3), kron3(i1, i2, h3)}),
      vstack({
          hstack({kron3(i1, h2t, i3), kron3(h1t, i2, i3), BitMatrix(v, v)}),
          hstack({kron3(i1, i2, h3t), BitMatrix(v, v), kron3(h1t, i2, i3)}),
          hstack({BitMatrix(v, v), kron3(i1, i2, h3t), kron3(i1, h2t, i3)}),
      }),
  };
  StabilizerCode code = StabilizerCode::from_css(css, "toric3");
  code.qubit_blocks = {{"E1", v}, {"E2", v}, {"E3", v}};
  code.check_blocks = {{"X", v}, {"Z", 3 * v}};
  code.lengths = {n1, n2, n3};
  require_built(code);
  return code;
}

StabilizerCode chamon4(std::size_t n1, std::size_t n2, std::size_t n3, std::size_t n4) {
  StabilizerCode code = xyz4(toric4_spec(n1, n2, n3, n4));
  code.family_tag = "chamon4";
  code.lengths = {n1, n2, n3, n4};
  return code;
}

StabilizerCode xyz4_concat(std::size_t n1, std::size_t n2, std::size_t n3, std::size_t n4) {
  StabilizerCode code = xyz4(concat4_spec(n1, n2, n3, n4));
  code.family_tag = "xyz4-concat";
  code.lengths = {n1, n2, n3, n4};
  return code;
}

StabilizerCode toric4(std::size_t n1, std::size_t n2, std::size_t n3, std::size_t n4) {
  StabilizerCode code = homological4(toric4_spec(n1, n2, n3, n4));
  code.family_tag = "toric4";
  code.lengths = {n1, n2, n3, n4};
  return code;
}

StabilizerCode homprod4_concat(std::size_t n1, std::size_t n2, std::size_t n3, std::size_t n4) {
  StabilizerCode code = homological4(concat4_spec(n1, n2, n3, n4));
  code.family_tag = "homprod4-concat";
  code.lengths = {n1, n2, n3, n4};
  return code;
}

const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names{"chamon3",     "toric3",          "chamon4", "toric4",
                                              "xyz4-concat", "homprod4-concat", "toric2",  "concat2"};
  return names;
}

std::size_t family_arity(const std::string& family) {
  static const std::map<std::string, std::size_t> arity{
      {"chamon3", 3},     {"toric3", 3},          {"chamon4", 4}, {"toric4", 4},
      {"xyz4-concat", 4}, {"homprod4-concat", 4}, {"toric2", 2},  {"concat2", 2}};
  auto it = arity.find(family);
  if (it == arity.end()) throw std::invalid_argument("unknown family '" + family + "'");
  return it->second;
}

StabilizerCode make_family(const std::string& family, const std::vector<std::size_t>& len) {
  const std::size_t want = family_arity(family);
  if (len.size() != want)
    throw std::invalid_argument(family + " takes " + std::to_string(want) + " lengths, got " +
                                std::to_string(len.size()));
  if (family == "chamon3") return chamon3(len[0], len[1], len[2]);
  if (family == "toric3") return toric3(len[0], len[1], len[2]);
  if (family == "chamon4") return chamon4(len[0], len[1], len[2], len[3]);
  if (family == "toric4") return toric4(len[0], len[1], len[2], len[3]);
  if (family == "xyz4-concat") return xyz4_concat(len[0], len[1], len[2], len[3]);
  if (family == "homprod4-concat") return homprod4_concat(len[0], len[1], len[2], len[3]);
  StabilizerCode code = StabilizerCode::from_css(
      family == "toric2" ? toric_2d(len[0], len[1]) : concatenated_rep(len[0], len[1]), family);
  code.lengths = len;
  return code;
}

std::optional<Product4Spec> family_spec(const std::string& family, const std::vector<std::size_t>& len) {
  if (family_arity(family) != 4 || len.size() != 4) return std::nullopt;
  if (family == "chamon4" || family == "toric4") return toric4_spec(len[0], len[1], len[2], len[3]);
  return concat4_spec(len[0], len[1], len[2], len[3]);
}

}  // namespace xyz
