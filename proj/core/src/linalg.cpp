#include "lr/linalg.hpp"

#include "lr/error.hpp"

namespace lr {

namespace {

void require_same_length(std::size_t a, std::size_t b, const char* what) {
  if (a != b)
    fail(ErrorKind::DimensionMismatch, std::string(what) + ": lengths " + std::to_string(a) +
                                           " and " + std::to_string(b) + " differ");
}

}  // namespace

UsageCtx UsageCtx::concat(const UsageCtx& other) const {
  std::vector<Usage> out = entries_;
  out.insert(out.end(), other.entries_.begin(), other.entries_.end());
  return UsageCtx(std::move(out));
}

UsageCtx UsageCtx::slice(std::size_t begin, std::size_t length) const {
  if (begin + length > entries_.size())
    fail(ErrorKind::IndexOutOfRange, "slice past the end of a usage context");
  return UsageCtx(std::vector<Usage>(entries_.begin() + begin,
                                     entries_.begin() + begin + length));
}

UsageCtx UsageMatrix::row(std::size_t i) const {
  if (i >= rows_) fail(ErrorKind::IndexOutOfRange, "matrix row out of range");
  return UsageCtx(std::vector<Usage>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_));
}

UsageMatrix UsageMatrix::from_rows(const std::vector<UsageCtx>& rows, std::size_t cols) {
  UsageMatrix m(rows.size(), cols, Usage{});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require_same_length(rows[i].size(), cols, "matrix row");
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

UsageCtx basis(const Semiring& sr, std::size_t n, std::size_t i) {
  if (i >= n)
    fail(ErrorKind::IndexOutOfRange,
         "basis index " + std::to_string(i) + " out of range for length " + std::to_string(n));
  UsageCtx v = zeros(sr, n);
  v[i] = sr.one();
  return v;
}

UsageCtx zeros(const Semiring& sr, std::size_t n) { return UsageCtx::filled(n, sr.zero()); }

UsageMatrix identity(const Semiring& sr, std::size_t m) {
  UsageMatrix out(m, m, sr.zero());
  for (std::size_t i = 0; i < m; ++i) out.at(i, i) = sr.one();
  return out;
}

UsageMatrix zero_matrix(const Semiring& sr, std::size_t rows, std::size_t cols) {
  return UsageMatrix(rows, cols, sr.zero());
}

UsageMatrix mat_mul(const Semiring& sr, const UsageMatrix& m, const UsageMatrix& n) {
  require_same_length(m.cols(), n.rows(), "mat_mul inner dimension");
  UsageMatrix out(m.rows(), n.cols(), sr.zero());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t k = 0; k < n.cols(); ++k) {
      Usage acc = sr.zero();
      for (std::size_t j = 0; j < m.cols(); ++j) acc = sr.add(acc, sr.mul(m.at(i, j), n.at(j, k)));
      out.at(i, k) = acc;
    }
  return out;
}

UsageCtx vec_mat_mul(const Semiring& sr, const UsageCtx& v, const UsageMatrix& m) {
  require_same_length(v.size(), m.rows(), "vec_mat_mul");
  std::vector<Usage> out(m.cols(), sr.zero());
  for (std::size_t k = 0; k < m.cols(); ++k) {
    Usage acc = sr.zero();
    for (std::size_t j = 0; j < v.size(); ++j) acc = sr.add(acc, sr.mul(v[j], m.at(j, k)));
    out[k] = acc;
  }
  return UsageCtx(std::move(out));
}

UsageMatrix reindex(const UsageMatrix& m, std::size_t rows, std::size_t cols,
                    const IndexMap& f, const IndexMap& g) {
  UsageMatrix out(rows, cols, Usage{});
  for (std::size_t i = 0; i < rows; ++i) {
    std::size_t fi = f(i);
    if (fi >= m.rows()) fail(ErrorKind::IndexOutOfRange, "reindex row map out of range");
    for (std::size_t j = 0; j < cols; ++j) {
      std::size_t gj = g(j);
      if (gj >= m.cols()) fail(ErrorKind::IndexOutOfRange, "reindex column map out of range");
      out.at(i, j) = m.at(fi, gj);
    }
  }
  return out;
}

UsageCtx add(const Semiring& sr, const UsageCtx& v, const UsageCtx& w) {
  require_same_length(v.size(), w.size(), "vector add");
  std::vector<Usage> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = sr.add(v[i], w[i]);
  return UsageCtx(std::move(out));
}

UsageMatrix add(const Semiring& sr, const UsageMatrix& a, const UsageMatrix& b) {
  require_same_length(a.rows(), b.rows(), "matrix add rows");
  require_same_length(a.cols(), b.cols(), "matrix add cols");
  UsageMatrix out(a.rows(), a.cols(), sr.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.at(i, j) = sr.add(a.at(i, j), b.at(i, j));
  return out;
}

UsageCtx scale(const Semiring& sr, Usage r, const UsageCtx& v) {
  std::vector<Usage> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = sr.mul(r, v[i]);
  return UsageCtx(std::move(out));
}

bool leq(const Semiring& sr, const UsageCtx& v, const UsageCtx& w) {
  return !first_leq_failure(sr, v, w).has_value();
}

bool leq(const Semiring& sr, const UsageMatrix& a, const UsageMatrix& b) {
  require_same_length(a.rows(), b.rows(), "matrix leq rows");
  require_same_length(a.cols(), b.cols(), "matrix leq cols");
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!sr.leq(a.at(i, j), b.at(i, j))) return false;
  return true;
}

std::optional<std::size_t> first_leq_failure(const Semiring& sr, const UsageCtx& v,
                                             const UsageCtx& w) {
  require_same_length(v.size(), w.size(), "vector leq");
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!sr.leq(v[i], w[i])) return i;
  return std::nullopt;
}

UsageMatrix block_diag(const Semiring& sr, const UsageMatrix& a, const UsageMatrix& b) {
  UsageMatrix out(a.rows() + b.rows(), a.cols() + b.cols(), sr.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out.at(a.rows() + i, a.cols() + j) = b.at(i, j);
  return out;
}

UsageMatrix vstack(const UsageMatrix& a, const UsageMatrix& b) {
  require_same_length(a.cols(), b.cols(), "vstack");
  UsageMatrix out(a.rows() + b.rows(), a.cols(), Usage{});
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out.at(a.rows() + i, j) = b.at(i, j);
  return out;
}

UsageMatrix vstack(const UsageMatrix& a, const UsageCtx& row) {
  return vstack(a, UsageMatrix::from_rows({row}, row.size()));
}

UsageMatrix hstack(const UsageMatrix& a, const UsageMatrix& b) {
  require_same_length(a.rows(), b.rows(), "hstack");
  UsageMatrix out(a.rows(), a.cols() + b.cols(), Usage{});
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) out.at(i, a.cols() + j) = b.at(i, j);
  }
  return out;
}

std::string print(const Semiring& sr, const UsageCtx& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += sr.print(v[i]);
  }
  return out + ")";
}

std::string print(const Semiring& sr, const UsageMatrix& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) out += ',';
    out += print(sr, m.row(i));
  }
  return out + "]";
}

}  // namespace lr
