#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lr/semiring.hpp"

namespace lr {

/// A usage context: one usage per typing-context entry, as a row vector.
class UsageCtx {
 public:
  UsageCtx() = default;
  explicit UsageCtx(std::vector<Usage> entries) : entries_(std::move(entries)) {}
  UsageCtx(std::initializer_list<Usage> entries) : entries_(entries) {}

  static UsageCtx filled(std::size_t n, Usage u) { return UsageCtx(std::vector<Usage>(n, u)); }

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  Usage operator[](std::size_t i) const { return entries_[i]; }
  Usage& operator[](std::size_t i) { return entries_[i]; }
  const std::vector<Usage>& entries() const { return entries_; }

  void push_back(Usage u) { entries_.push_back(u); }
  /// (this, other)
  UsageCtx concat(const UsageCtx& other) const;
  UsageCtx slice(std::size_t begin, std::size_t length) const;

  friend bool operator==(const UsageCtx&, const UsageCtx&) = default;
  friend auto operator<=>(const UsageCtx&, const UsageCtx&) = default;

 private:
  std::vector<Usage> entries_;
};

/// Dense rows x cols matrix of usages.
class UsageMatrix {
 public:
  UsageMatrix() = default;
  UsageMatrix(std::size_t rows, std::size_t cols, Usage fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Usage at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Usage& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  UsageCtx row(std::size_t i) const;

  static UsageMatrix from_rows(const std::vector<UsageCtx>& rows, std::size_t cols);

  friend bool operator==(const UsageMatrix&, const UsageMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Usage> data_;
};

using IndexMap = std::function<std::size_t(std::size_t)>;

UsageCtx basis(const Semiring& sr, std::size_t n, std::size_t i);
UsageCtx zeros(const Semiring& sr, std::size_t n);
UsageMatrix identity(const Semiring& sr, std::size_t m);
UsageMatrix zero_matrix(const Semiring& sr, std::size_t rows, std::size_t cols);

/// (MN)_ik = sum over ascending j of M_ij N_jk.
UsageMatrix mat_mul(const Semiring& sr, const UsageMatrix& m, const UsageMatrix& n);
UsageCtx vec_mat_mul(const Semiring& sr, const UsageCtx& v, const UsageMatrix& m);

/// (M_{f x g})_ij = M_{f i, g j}, producing a rows x cols matrix.
UsageMatrix reindex(const UsageMatrix& m, std::size_t rows, std::size_t cols,
                    const IndexMap& f, const IndexMap& g);

UsageCtx add(const Semiring& sr, const UsageCtx& v, const UsageCtx& w);
UsageMatrix add(const Semiring& sr, const UsageMatrix& a, const UsageMatrix& b);
/// r * v_i for each entry (left scaling).
UsageCtx scale(const Semiring& sr, Usage r, const UsageCtx& v);
bool leq(const Semiring& sr, const UsageCtx& v, const UsageCtx& w);
bool leq(const Semiring& sr, const UsageMatrix& a, const UsageMatrix& b);
/// First coordinate where v_i <| w_i fails.
std::optional<std::size_t> first_leq_failure(const Semiring& sr, const UsageCtx& v,
                                             const UsageCtx& w);

UsageMatrix block_diag(const Semiring& sr, const UsageMatrix& a, const UsageMatrix& b);
UsageMatrix vstack(const UsageMatrix& a, const UsageMatrix& b);
UsageMatrix vstack(const UsageMatrix& a, const UsageCtx& row);
UsageMatrix hstack(const UsageMatrix& a, const UsageMatrix& b);

/// "(1,0,w)"
std::string print(const Semiring& sr, const UsageCtx& v);
/// "[(1,0),(0,1)]"
std::string print(const Semiring& sr, const UsageMatrix& m);

}  // namespace lr
