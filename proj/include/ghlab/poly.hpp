#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include "ghlab/matrix.hpp"

namespace ghlab {

/// A monomial is the sorted multiset of matrix-entry slots it multiplies,
/// each slot flattened to row * cols + col (0-based).  Sortedness is the
/// canonical form; the map keeps term order deterministic everywhere.
using Monomial = std::vector<std::uint32_t>;

struct MatrixPolynomial {
  int rows = 0;
  int cols = 0;
  std::map<Monomial, Complex> terms;

  static MatrixPolynomial zero(int rows, int cols) { return {rows, cols, {}}; }

  static MatrixPolynomial constant(int rows, int cols, Complex c) {
    MatrixPolynomial f{rows, cols, {}};
    if (c != Complex(0, 0)) f.terms[{}] = c;
    return f;
  }

  bool is_zero() const { return terms.empty(); }

  /// Largest monomial length; 0 for constants and for the zero polynomial.
  int degree() const {
    std::size_t d = 0;
    for (const auto& [m, c] : terms) d = std::max(d, m.size());
    return static_cast<int>(d);
  }

  bool is_homogeneous() const {
    if (terms.empty()) return true;
    std::size_t d = terms.begin()->first.size();
    for (const auto& [m, c] : terms)
      if (m.size() != d) return false;
    return true;
  }
};

namespace detail {

inline void require_same_shape(const MatrixPolynomial& f, const MatrixPolynomial& h) {
  if (f.rows != h.rows || f.cols != h.cols)
    throw Error(ErrorKind::ShapeMismatch, "polynomial shapes differ");
}

inline void prune_zeros(MatrixPolynomial& f) {
  for (auto it = f.terms.begin(); it != f.terms.end();)
    it = (it->second == Complex(0, 0)) ? f.terms.erase(it) : std::next(it);
}

}  // namespace detail

inline MatrixPolynomial operator+(const MatrixPolynomial& f, const MatrixPolynomial& h) {
  detail::require_same_shape(f, h);
  MatrixPolynomial out = f;
  for (const auto& [m, c] : h.terms) out.terms[m] += c;
  detail::prune_zeros(out);
  return out;
}

inline MatrixPolynomial operator*(Complex s, const MatrixPolynomial& f) {
  MatrixPolynomial out{f.rows, f.cols, {}};
  if (s == Complex(0, 0)) return out;
  for (const auto& [m, c] : f.terms) out.terms[m] = s * c;
  return out;
}

inline MatrixPolynomial operator-(const MatrixPolynomial& f, const MatrixPolynomial& h) {
  return f + (Complex(-1, 0) * h);
}

inline MatrixPolynomial operator*(const MatrixPolynomial& f, const MatrixPolynomial& h) {
  detail::require_same_shape(f, h);
  MatrixPolynomial out{f.rows, f.cols, {}};
  for (const auto& [mf, cf] : f.terms)
    for (const auto& [mh, ch] : h.terms) {
      Monomial merged(mf.size() + mh.size());
      std::merge(mf.begin(), mf.end(), mh.begin(), mh.end(), merged.begin());
      out.terms[merged] += cf * ch;
    }
  detail::prune_zeros(out);
  return out;
}

/// The coordinate slot z[j, a], 1-based as in the classical notation.
inline MatrixPolynomial coefficient_function(int rows, int cols, int j, int a) {
  if (j < 1 || j > rows || a < 1 || a > cols)
    throw Error(ErrorKind::IndexOutOfRange, "coefficient_function: index outside matrix shape");
  MatrixPolynomial f{rows, cols, {}};
  f.terms[{static_cast<std::uint32_t>((j - 1) * cols + (a - 1))}] = Complex(1, 0);
  return f;
}

namespace detail {

inline void validate_index_list(const std::vector<int>& idx, int bound, const char* what) {
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] < 1 || idx[i] > bound) throw Error(ErrorKind::IndexOutOfRange, std::string(what) + ": index outside bounds");
    if (i > 0 && idx[i] == idx[i - 1]) throw Error(ErrorKind::DuplicateIndex, std::string(what) + ": repeated index");
    if (i > 0 && idx[i] < idx[i - 1]) throw Error(ErrorKind::InvalidArgument, std::string(what) + ": indices must increase");
  }
}

}  // namespace detail

/// Determinant of the submatrix picked by 1-based, strictly increasing row
/// and column lists, expanded as the signed sum over permutations.  Exact
/// +-1 coefficients; meant for desk-scale sizes (p! terms).
inline MatrixPolynomial minor_polynomial(int rows, int cols, const std::vector<int>& row_idx,
                                         const std::vector<int>& col_idx) {
  if (row_idx.size() != col_idx.size() || row_idx.empty())
    throw Error(ErrorKind::InvalidArgument, "minor_polynomial: need equally sized nonempty index lists");
  detail::validate_index_list(row_idx, rows, "minor rows");
  detail::validate_index_list(col_idx, cols, "minor cols");

  const std::size_t p = row_idx.size();
  std::vector<std::size_t> perm(p);
  for (std::size_t i = 0; i < p; ++i) perm[i] = i;

  MatrixPolynomial out{rows, cols, {}};
  do {
    // Parity by counting inversions; p is tiny so the quadratic count is fine.
    int inversions = 0;
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = i + 1; j < p; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Monomial m(p);
    for (std::size_t i = 0; i < p; ++i)
      m[i] = static_cast<std::uint32_t>((row_idx[i] - 1) * cols + (col_idx[perm[i]] - 1));
    std::sort(m.begin(), m.end());
    out.terms[m] += Complex(inversions % 2 == 0 ? 1.0 : -1.0, 0);
  } while (std::next_permutation(perm.begin(), perm.end()));
  detail::prune_zeros(out);
  return out;
}

inline Complex evaluate(const MatrixPolynomial& f, const Matrix& g) {
  if (g.rows() != f.rows || g.cols() != f.cols)
    throw Error(ErrorKind::ShapeMismatch, "evaluate: matrix shape does not match polynomial shape");
  Complex acc(0, 0);
  for (const auto& [m, c] : f.terms) {
    Complex prod = c;
    for (std::uint32_t e : m) {
      int r = static_cast<int>(e) / f.cols;
      int col = static_cast<int>(e) % f.cols;
      prod *= g(r, col);
    }
    acc += prod;
  }
  return acc;
}

/// Value and first two derivatives of t -> f(g exp(tX)) at t = 0; d1 is the
/// directional derivative, 2 * d2 the second derivative.
struct Jet2 {
  Complex value{0, 0};
  Complex d1{0, 0};
  Complex d2{0, 0};
};

namespace detail {

/// Degree-2 truncated polynomial in the curve parameter.
struct Trunc2 {
  Complex c0{0, 0}, c1{0, 0}, c2{0, 0};
};

inline Trunc2 mul(const Trunc2& a, const Trunc2& b) {
  return {a.c0 * b.c0, a.c0 * b.c1 + a.c1 * b.c0, a.c0 * b.c2 + a.c1 * b.c1 + a.c2 * b.c0};
}

/// Jet of f along the curve whose entries are g + t (gX) + t^2 (gXX_half).
/// Substituting the truncated curve into each monomial is exact: no step
/// size enters, so there is no differencing error to balance.
inline Jet2 jet_from_curve(const MatrixPolynomial& f, const Matrix& g, const Matrix& gX,
                           const Matrix& gXX_half) {
  Jet2 out;
  for (const auto& [m, c] : f.terms) {
    Trunc2 prod{c, Complex(0, 0), Complex(0, 0)};
    for (std::uint32_t e : m) {
      int r = static_cast<int>(e) / f.cols;
      int col = static_cast<int>(e) % f.cols;
      prod = mul(prod, Trunc2{g(r, col), gX(r, col), gXX_half(r, col)});
    }
    out.value += prod.c0;
    out.d1 += prod.c1;
    out.d2 += prod.c2;
  }
  return out;
}

}  // namespace detail

inline Jet2 jet2(const MatrixPolynomial& f, const Matrix& g, const Matrix& X) {
  if (g.rows() != f.rows || g.cols() != f.cols || X.rows() != g.rows() || X.cols() != g.cols())
    throw Error(ErrorKind::ShapeMismatch, "jet2: shape mismatch between polynomial, point and direction");
  Matrix gX = g * X;
  Matrix gXX_half = 0.5 * (gX * X);
  return detail::jet_from_curve(f, g, gX, gXX_half);
}

// ---------------------------------------------------------------------------
// Textual form: "z(RxC): (re,im) * z[j,a]*z[k,b] + ...", canonically ordered.
// Printing uses 17 significant digits so parse(print(f)) == f exactly.

namespace detail {

inline std::string complex_literal(Complex c) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "(%.17g,%.17g)", c.real(), c.imag());
  return buf;
}

struct Scanner {
  const char* p;
  explicit Scanner(const std::string& s) : p(s.c_str()) {}

  void skip_ws() {
    while (*p == ' ') ++p;
  }
  bool accept(char c) {
    skip_ws();
    if (*p != c) return false;
    ++p;
    return true;
  }
  void expect(char c, const char* ctx) {
    if (!accept(c)) throw Error(ErrorKind::InvalidArgument, std::string("parse error: expected '") + c + "' in " + ctx);
  }
  bool accept_word(const char* w) {
    skip_ws();
    const char* q = p;
    while (*w && *q == *w) ++q, ++w;
    if (*w) return false;
    p = q;
    return true;
  }
  long integer(const char* ctx) {
    skip_ws();
    char* end = nullptr;
    long v = std::strtol(p, &end, 10);
    if (end == p) throw Error(ErrorKind::InvalidArgument, std::string("parse error: expected integer in ") + ctx);
    p = end;
    return v;
  }
  double real(const char* ctx) {
    skip_ws();
    char* end = nullptr;
    double v = std::strtod(p, &end);
    if (end == p) throw Error(ErrorKind::InvalidArgument, std::string("parse error: expected number in ") + ctx);
    p = end;
    return v;
  }
  Complex complex_value(const char* ctx) {
    expect('(', ctx);
    double re = real(ctx);
    expect(',', ctx);
    double im = real(ctx);
    expect(')', ctx);
    return {re, im};
  }
  bool done() {
    skip_ws();
    return *p == '\0';
  }
};

}  // namespace detail

inline std::string to_string(const MatrixPolynomial& f) {
  std::string out = "z(" + std::to_string(f.rows) + "x" + std::to_string(f.cols) + "): ";
  if (f.terms.empty()) return out + "0";
  bool first = true;
  for (const auto& [m, c] : f.terms) {
    if (!first) out += " + ";
    first = false;
    out += detail::complex_literal(c);
    for (std::uint32_t e : m) {
      int r = static_cast<int>(e) / f.cols + 1;
      int col = static_cast<int>(e) % f.cols + 1;
      out += " * z[" + std::to_string(r) + "," + std::to_string(col) + "]";
    }
  }
  return out;
}

inline MatrixPolynomial parse_matrix_polynomial(const std::string& text) {
  detail::Scanner s(text);
  s.expect('z', "shape header");
  s.expect('(', "shape header");
  long rows = s.integer("shape header");
  s.expect('x', "shape header");
  long cols = s.integer("shape header");
  s.expect(')', "shape header");
  s.expect(':', "shape header");

  MatrixPolynomial f{static_cast<int>(rows), static_cast<int>(cols), {}};
  if (rows < 1 || cols < 1) throw Error(ErrorKind::ShapeMismatch, "parse: invalid shape");
  s.skip_ws();
  if (s.accept('0') && s.done()) return f;

  while (true) {
    Complex c = s.complex_value("term coefficient");
    Monomial m;
    while (s.accept('*')) {
      s.expect('z', "entry slot");
      s.expect('[', "entry slot");
      long j = s.integer("entry slot");
      s.expect(',', "entry slot");
      long a = s.integer("entry slot");
      s.expect(']', "entry slot");
      if (j < 1 || j > rows || a < 1 || a > cols)
        throw Error(ErrorKind::IndexOutOfRange, "parse: entry slot outside shape");
      m.push_back(static_cast<std::uint32_t>((j - 1) * cols + (a - 1)));
    }
    std::sort(m.begin(), m.end());
    f.terms[m] += c;
    if (s.done()) break;
    s.expect('+', "term separator");
  }
  detail::prune_zeros(f);
  return f;
}

}  // namespace ghlab
