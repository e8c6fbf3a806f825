#include "termcheck/interp.hpp"

#include <algorithm>
#include <optional>

#include "termcheck/error.hpp"

namespace termcheck {

Matrix::Matrix(std::initializer_list<std::initializer_list<Natural>> rows) : rows_(rows.size()) {
  cols_ = rows.size() == 0 ? 0 : rows.begin()->size();
  for (const auto& row : rows) {
    if (row.size() != cols_) throw ValidationError("ragged matrix");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

Matrix Matrix::identity(std::size_t n) { return scalar(n, 1); }

Matrix Matrix::scalar(std::size_t n, Natural k) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = k;
  return m;
}

Matrix Matrix::column(std::vector<Natural> entries) {
  Matrix m(entries.size(), 1);
  m.data_ = std::move(entries);
  return m;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Natural v) { return v == 0; });
}

bool Matrix::geq(const Matrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw ValidationError("matrix dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (data_[i] < other.data_[i]) return false;
  }
  return true;
}

Matrix Matrix::operator*(const Matrix& other) const {
  if (cols_ != other.rows_) throw ValidationError("matrix dimension mismatch");
  Matrix r(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      Natural a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) {
        r(i, j) = checked_add(r(i, j), checked_mul(a, other(k, j)));
      }
    }
  }
  return r;
}

Matrix Matrix::operator+(const Matrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw ValidationError("matrix dimension mismatch");
  Matrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = checked_add(r.data_[i], other.data_[i]);
  return r;
}

SymbolInterp poly_symbol(const std::vector<Natural>& coeffs, Natural constant) {
  SymbolInterp si;
  for (Natural a : coeffs) si.coeffs.push_back(Matrix::scalar(1, a));
  si.constant = Matrix::column({constant});
  return si;
}

LinForm linear_form(const Interpretation& interp, const Term& t) {
  const std::size_t d = interp.dim;
  if (t.is_var()) return LinForm{{{t.var_id(), Matrix::identity(d)}}, Matrix(d, 1)};

  if (t.symbol() >= interp.symbols.size()) {
    throw ValidationError("no interpretation for symbol " + std::to_string(t.symbol()));
  }
  const SymbolInterp& si = interp.symbols[t.symbol()];
  if (si.coeffs.size() != t.args().size()) {
    throw ValidationError("interpretation arity mismatch for symbol " + std::to_string(t.symbol()));
  }

  LinForm result{{}, si.constant};
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    LinForm arg = linear_form(interp, t.args()[i]);
    const Matrix& m = si.coeffs[i];
    result.constant = result.constant + m * arg.constant;
    for (const auto& [x, c] : arg.coeffs) {
      Matrix contribution = m * c;
      auto it = result.coeffs.find(x);
      if (it == result.coeffs.end()) {
        result.coeffs.emplace(x, std::move(contribution));
      } else {
        it->second = it->second + contribution;
      }
    }
  }
  return result;
}

Orientation orients(const Interpretation& interp, const Rule& rule) {
  LinForm l = linear_form(interp, rule.lhs);
  LinForm r = linear_form(interp, rule.rhs);
  for (const auto& [x, rc] : r.coeffs) {
    auto it = l.coeffs.find(x);
    if (it == l.coeffs.end()) {
      if (!rc.is_zero()) return Orientation::No;
    } else if (!it->second.geq(rc)) {
      return Orientation::No;
    }
  }
  if (!l.constant.geq(r.constant) || l.constant(0, 0) <= r.constant(0, 0)) return Orientation::No;
  return Orientation::Strict;
}

bool monotone(const Interpretation& interp) {
  return std::all_of(interp.symbols.begin(), interp.symbols.end(), [](const SymbolInterp& si) {
    return std::all_of(si.coeffs.begin(), si.coeffs.end(), [](const Matrix& m) { return m(0, 0) >= 1; });
  });
}

Matrix eval_numeric(const LinForm& form, const std::map<VarId, Matrix>& assignment) {
  Matrix value = form.constant;
  for (const auto& [x, c] : form.coeffs) {
    auto it = assignment.find(x);
    if (it == assignment.end()) throw ValidationError("no value for variable " + std::to_string(x));
    value = value + c * it->second;
  }
  return value;
}

std::string format_matrix(const Matrix& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i > 0) out += ";";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ",";
      out += std::to_string(m(i, j));
    }
  }
  return out + "]";
}

namespace {

// Returns k if m == k * I.
std::optional<Natural> scalar_of(const Matrix& m) {
  Natural k = m(0, 0);
  return m == Matrix::scalar(m.rows(), k) ? std::optional<Natural>(k) : std::nullopt;
}

}  // namespace

std::string format_symbol_interp(InterpKind kind, const SymbolInterp& si) {
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < si.coeffs.size(); ++i) {
    const Matrix& c = si.coeffs[i];
    if (c.is_zero()) continue;
    std::string var = "x" + std::to_string(i);
    auto k = scalar_of(c);
    if (k && *k == 1) {
      parts.push_back(var);
    } else if (k) {
      parts.push_back(std::to_string(*k) + var);
    } else {
      parts.push_back(format_matrix(c) + var);
    }
  }
  if (!si.constant.is_zero()) {
    parts.push_back(kind == InterpKind::Poly ? std::to_string(si.constant(0, 0)) : format_matrix(si.constant));
  }
  if (parts.empty()) return "0";
  std::string out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out += " + " + parts[i];
  return out;
}

}  // namespace termcheck
