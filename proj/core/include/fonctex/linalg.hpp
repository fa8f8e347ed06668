#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fonctex {

// Inverse of a nonzero element of F_p.
uint32_t field_inv(uint32_t p, uint32_t a);
void check_field(uint32_t p);

/// Vector over F_p. Bit-packed when p == 2, one byte per entry otherwise (p < 256).
class FVec {
 public:
  FVec() = default;
  FVec(uint32_t p, size_t n);

  static FVec unit(uint32_t p, size_t n, size_t i);
  static FVec from_values(uint32_t p, std::span<const uint32_t> values);

  uint32_t p() const { return p_; }
  size_t size() const { return n_; }
  bool packed() const { return p_ == 2; }

  uint32_t get(size_t i) const {
    return packed() ? static_cast<uint32_t>((w_[i >> 6] >> (i & 63)) & 1u) : b_[i];
  }
  void set(size_t i, uint32_t v);
  void add_at(size_t i, uint32_t v);
  // this += c * x
  void axpy(uint32_t c, const FVec& x);
  void scale(uint32_t c);

  bool is_zero() const;
  size_t first_nonzero() const;  // size() when zero
  size_t nnz() const;
  std::vector<uint32_t> values() const;
  std::string to_string() const;

  friend bool operator==(const FVec& a, const FVec& b) {
    return a.p_ == b.p_ && a.n_ == b.n_ && a.w_ == b.w_ && a.b_ == b.b_;
  }

  // Raw storage, for elimination kernels.
  size_t num_words() const { return w_.size(); }
  uint64_t* words() { return w_.data(); }
  const uint64_t* words() const { return w_.data(); }
  uint8_t* bytes() { return b_.data(); }
  const uint8_t* bytes() const { return b_.data(); }

 private:
  uint32_t p_ = 2;
  size_t n_ = 0;
  std::vector<uint64_t> w_;
  std::vector<uint8_t> b_;
};

/// Dense matrix over F_p, row-major. Packed rows (64 entries per word) or bytes.
class FMat {
 public:
  enum class Layout { Packed, Bytes };

  FMat() = default;
  FMat(uint32_t p, size_t rows, size_t cols);  // Packed iff p == 2
  FMat(uint32_t p, size_t rows, size_t cols, Layout layout);

  static FMat identity(uint32_t p, size_t n);
  static FMat from_rows(uint32_t p, const std::vector<std::vector<uint32_t>>& rows, size_t cols = 0);
  static FMat from_columns(uint32_t p, size_t rows, std::span<const FVec> columns);

  uint32_t p() const { return p_; }
  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  Layout layout() const { return layout_; }

  uint32_t get(size_t r, size_t c) const {
    return layout_ == Layout::Packed ? static_cast<uint32_t>((w_[r * wpr_ + (c >> 6)] >> (c & 63)) & 1u)
                                     : b_[r * cols_ + c];
  }
  void set(size_t r, size_t c, uint32_t v);

  FVec row(size_t r) const;
  FVec column(size_t c) const;
  void set_row(size_t r, const FVec& v);
  void set_column(size_t c, const FVec& v);

  FVec apply(const FVec& v) const;
  FMat transpose() const;
  FMat with_layout(Layout layout) const;
  bool is_zero() const;
  bool is_identity() const;

  FMat operator*(const FMat& o) const;
  FMat operator+(const FMat& o) const;
  FMat operator-(const FMat& o) const;
  FMat scaled(uint32_t c) const;
  friend bool operator==(const FMat& a, const FMat& b);

  std::string to_string() const;

  size_t words_per_row() const { return wpr_; }
  uint64_t* row_words(size_t r) { return w_.data() + r * wpr_; }
  const uint64_t* row_words(size_t r) const { return w_.data() + r * wpr_; }
  uint8_t* row_bytes(size_t r) { return b_.data() + r * cols_; }
  const uint8_t* row_bytes(size_t r) const { return b_.data() + r * cols_; }

 private:
  uint32_t p_ = 2;
  size_t rows_ = 0;
  size_t cols_ = 0;
  Layout layout_ = Layout::Packed;
  size_t wpr_ = 0;
  std::vector<uint64_t> w_;
  std::vector<uint8_t> b_;
};

FMat kron(const FMat& a, const FMat& b);
FMat hstack(const FMat& a, const FMat& b);
FMat vstack(const FMat& a, const FMat& b);
FMat block_diag(const FMat& a, const FMat& b);

struct RrefResult {
  FMat rref;
  std::vector<size_t> pivots;
  size_t rank = 0;
};

RrefResult rref(const FMat& m);
size_t rank(const FMat& m);
// Columns form a basis of {x : m x = 0}, one per free column, in increasing order.
FMat kernel_basis(const FMat& m);
// Lexicographically smallest solution of a x = b, if any.
std::optional<std::vector<uint32_t>> solve(const FMat& a, std::span<const uint32_t> b);
std::optional<FMat> inverse(const FMat& m);

/// Reduced basis of a subspace of F_p^n. Every row has a pivot position where it
/// is 1 and all other rows are 0, so reducing a vector touches each pivot once.
/// Inserted vectors take their first nonzero entry as pivot; rows are kept sorted
/// by pivot.
class EchelonBasis {
 public:
  EchelonBasis() = default;
  EchelonBasis(uint32_t p, size_t ambient);

  // Null space of m, built directly from its RREF: free columns become pivots.
  static EchelonBasis kernel_of(const FMat& m);
  static EchelonBasis column_span(const FMat& m);

  uint32_t p() const { return p_; }
  size_t ambient() const { return n_; }
  size_t dim() const { return rows_.size(); }

  // Returns true iff the span grew.
  bool insert(FVec v);
  FVec reduce(FVec v) const;
  bool contains(const FVec& v) const { return reduce(v).is_zero(); }
  // Coefficients of v (assumed in the span) in the sorted basis.
  std::vector<uint32_t> coordinates(const FVec& v) const;
  // Entries of reduce(v) at non-pivot positions; coordinates in the quotient.
  std::vector<uint32_t> quotient_coordinates(const FVec& v) const;

  const std::vector<FVec>& basis() const { return rows_; }
  const std::vector<size_t>& pivots() const { return pivots_; }
  bool is_pivot(size_t i) const { return where_[i] >= 0; }
  std::vector<size_t> non_pivots() const;
  FMat as_columns() const;

 private:
  void place(FVec v, size_t pivot);

  uint32_t p_ = 2;
  size_t n_ = 0;
  std::vector<FVec> rows_;
  std::vector<size_t> pivots_;
  std::vector<int64_t> where_;
  std::vector<uint64_t> mask_;
};

}  // namespace fonctex
