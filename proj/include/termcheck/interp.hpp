#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "termcheck/natural.hpp"
#include "termcheck/trs.hpp"

namespace termcheck {

/// Dense row-major matrix of naturals with overflow-checked arithmetic.
/// Vectors are single-column matrices.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, Natural fill = 0) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  /// Rows of equal length.
  Matrix(std::initializer_list<std::initializer_list<Natural>> rows);

  static Matrix identity(std::size_t n);
  static Matrix scalar(std::size_t n, Natural k);
  static Matrix column(std::vector<Natural> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Natural& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Natural operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<Natural>& data() const { return data_; }

  bool is_zero() const;
  /// Entrywise comparison; dimensions must agree.
  bool geq(const Matrix& other) const;

  Matrix operator*(const Matrix& other) const;
  Matrix operator+(const Matrix& other) const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Natural> data_;
};

enum class InterpKind { Poly, Matrix };

/// [f](x_0..x_{n-1}) = sum_i coeffs[i] * x_i + constant.
/// Coefficients are dim x dim, the constant is dim x 1.
struct SymbolInterp {
  std::vector<Matrix> coeffs;
  Matrix constant;

  bool operator==(const SymbolInterp&) const = default;
};

/// A linear interpretation for every symbol (indexed by SymbolId).
/// Polynomial interpretations are the dimension-one case; `kind` only
/// affects printing and template reading.
struct Interpretation {
  InterpKind kind = InterpKind::Poly;
  std::size_t dim = 1;
  std::vector<SymbolInterp> symbols;

  bool operator==(const Interpretation&) const = default;
};

/// Convenience for polynomial interpretations: sum a_i x_i + c.
SymbolInterp poly_symbol(const std::vector<Natural>& coeffs, Natural constant);

/// Symbolic normal form of [t]: one coefficient per variable plus a constant.
struct LinForm {
  std::map<VarId, Matrix> coeffs;
  Matrix constant;

  bool operator==(const LinForm&) const = default;
};

LinForm linear_form(const Interpretation& interp, const Term& t);

enum class Orientation { Strict, No };

/// Absolute positiveness: every variable coefficient of the lhs dominates the
/// rhs one entrywise, and the lhs constant is strictly bigger in the first
/// component and not smaller in the others.
Orientation orients(const Interpretation& interp, const Rule& rule);

/// Every argument coefficient has a positive top-left entry.
bool monotone(const Interpretation& interp);

/// Value of `form` under `assignment` (each value a dim x 1 vector).
Matrix eval_numeric(const LinForm& form, const std::map<VarId, Matrix>& assignment);

std::string format_matrix(const Matrix& m);
/// Right-hand side in template syntax, e.g. `[1,1;0,1]x0 + x1 + [1;0]` or `2x0 + 1`.
std::string format_symbol_interp(InterpKind kind, const SymbolInterp& si);

}  // namespace termcheck
