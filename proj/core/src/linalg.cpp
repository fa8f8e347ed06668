#include "fonctex/linalg.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "fonctex/error.hpp"
#include "fonctex/ring.hpp"

namespace fonctex {

namespace {

size_t words_for(size_t n) { return (n + 63) / 64; }

uint32_t mulmod(uint32_t a, uint32_t b, uint32_t p) { return (a * b) % p; }

// Row operations on byte rows: dst[from..n) += c * src[from..n).
void byte_axpy(uint8_t* dst, const uint8_t* src, size_t from, size_t n, uint32_t c, uint32_t p) {
  for (size_t j = from; j < n; ++j)
    if (src[j]) dst[j] = static_cast<uint8_t>((dst[j] + c * src[j]) % p);
}

}  // namespace

void check_field(uint32_t p) {
  if (p < 2 || p > 255 || !is_prime(p)) throw ArgumentError("coefficient field must be F_p with p prime < 256, got " + std::to_string(p));
}

uint32_t field_inv(uint32_t p, uint32_t a) {
  a %= p;
  if (a == 0) throw ArgumentError("field_inv: zero has no inverse");
  uint32_t result = 1, base = a, e = p - 2;
  while (e) {
    if (e & 1) result = mulmod(result, base, p);
    base = mulmod(base, base, p);
    e >>= 1;
  }
  return result;
}

// ---------------------------------------------------------------- FVec

FVec::FVec(uint32_t p, size_t n) : p_(p), n_(n) {
  check_field(p);
  if (p == 2)
    w_.assign(words_for(n), 0);
  else
    b_.assign(n, 0);
}

FVec FVec::unit(uint32_t p, size_t n, size_t i) {
  FVec v(p, n);
  v.set(i, 1);
  return v;
}

FVec FVec::from_values(uint32_t p, std::span<const uint32_t> values) {
  FVec v(p, values.size());
  for (size_t i = 0; i < values.size(); ++i) v.set(i, values[i]);
  return v;
}

void FVec::set(size_t i, uint32_t v) {
  v %= p_;
  if (packed()) {
    const uint64_t bit = uint64_t{1} << (i & 63);
    if (v)
      w_[i >> 6] |= bit;
    else
      w_[i >> 6] &= ~bit;
  } else {
    b_[i] = static_cast<uint8_t>(v);
  }
}

void FVec::add_at(size_t i, uint32_t v) {
  v %= p_;
  if (packed())
    w_[i >> 6] ^= uint64_t{v & 1u} << (i & 63);
  else
    b_[i] = static_cast<uint8_t>((b_[i] + v) % p_);
}

void FVec::axpy(uint32_t c, const FVec& x) {
  if (x.p_ != p_ || x.n_ != n_) throw ArgumentError("FVec::axpy: shape mismatch");
  c %= p_;
  if (c == 0) return;
  if (packed()) {
    for (size_t k = 0; k < w_.size(); ++k) w_[k] ^= x.w_[k];
  } else {
    byte_axpy(b_.data(), x.b_.data(), 0, n_, c, p_);
  }
}

void FVec::scale(uint32_t c) {
  c %= p_;
  if (packed()) {
    if (c == 0) std::fill(w_.begin(), w_.end(), 0);
    return;
  }
  for (auto& x : b_) x = static_cast<uint8_t>(mulmod(x, c, p_));
}

bool FVec::is_zero() const {
  if (packed()) return std::all_of(w_.begin(), w_.end(), [](uint64_t w) { return w == 0; });
  return std::all_of(b_.begin(), b_.end(), [](uint8_t x) { return x == 0; });
}

size_t FVec::first_nonzero() const {
  if (packed()) {
    for (size_t k = 0; k < w_.size(); ++k)
      if (w_[k]) return k * 64 + static_cast<size_t>(std::countr_zero(w_[k]));
    return n_;
  }
  for (size_t i = 0; i < n_; ++i)
    if (b_[i]) return i;
  return n_;
}

size_t FVec::nnz() const {
  size_t c = 0;
  if (packed()) {
    for (uint64_t w : w_) c += static_cast<size_t>(std::popcount(w));
  } else {
    for (uint8_t x : b_) c += x != 0;
  }
  return c;
}

std::vector<uint32_t> FVec::values() const {
  std::vector<uint32_t> out(n_);
  for (size_t i = 0; i < n_; ++i) out[i] = get(i);
  return out;
}

std::string FVec::to_string() const {
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < n_; ++i) os << (i ? "," : "") << get(i);
  os << ')';
  return os.str();
}

// ---------------------------------------------------------------- FMat

FMat::FMat(uint32_t p, size_t rows, size_t cols) : FMat(p, rows, cols, p == 2 ? Layout::Packed : Layout::Bytes) {}

FMat::FMat(uint32_t p, size_t rows, size_t cols, Layout layout) : p_(p), rows_(rows), cols_(cols), layout_(layout) {
  check_field(p);
  if (layout == Layout::Packed) {
    if (p != 2) throw ArgumentError("packed layout requires p = 2");
    wpr_ = words_for(cols);
    w_.assign(rows * wpr_, 0);
  } else {
    b_.assign(rows * cols, 0);
  }
}

FMat FMat::identity(uint32_t p, size_t n) {
  FMat m(p, n, n);
  for (size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

FMat FMat::from_rows(uint32_t p, const std::vector<std::vector<uint32_t>>& rows, size_t cols) {
  if (!rows.empty()) cols = rows[0].size();
  FMat m(p, rows.size(), cols);
  for (size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw ArgumentError("FMat::from_rows: ragged rows");
    for (size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

FMat FMat::from_columns(uint32_t p, size_t rows, std::span<const FVec> columns) {
  FMat m(p, rows, columns.size());
  for (size_t c = 0; c < columns.size(); ++c) m.set_column(c, columns[c]);
  return m;
}

void FMat::set(size_t r, size_t c, uint32_t v) {
  v %= p_;
  if (layout_ == Layout::Packed) {
    const uint64_t bit = uint64_t{1} << (c & 63);
    if (v)
      w_[r * wpr_ + (c >> 6)] |= bit;
    else
      w_[r * wpr_ + (c >> 6)] &= ~bit;
  } else {
    b_[r * cols_ + c] = static_cast<uint8_t>(v);
  }
}

FVec FMat::row(size_t r) const {
  FVec v(p_, cols_);
  if (layout_ == Layout::Packed) {
    std::copy(row_words(r), row_words(r) + wpr_, v.words());
  } else if (p_ != 2) {
    std::copy(row_bytes(r), row_bytes(r) + cols_, v.bytes());
  } else {
    for (size_t c = 0; c < cols_; ++c)
      if (b_[r * cols_ + c]) v.set(c, 1);
  }
  return v;
}

FVec FMat::column(size_t c) const {
  FVec v(p_, rows_);
  for (size_t r = 0; r < rows_; ++r)
    if (uint32_t x = get(r, c)) v.set(r, x);
  return v;
}

void FMat::set_row(size_t r, const FVec& v) {
  if (v.size() != cols_ || v.p() != p_) throw ArgumentError("FMat::set_row: shape mismatch");
  if (layout_ == Layout::Packed) {
    std::copy(v.words(), v.words() + wpr_, row_words(r));
  } else {
    for (size_t c = 0; c < cols_; ++c) b_[r * cols_ + c] = static_cast<uint8_t>(v.get(c));
  }
}

void FMat::set_column(size_t c, const FVec& v) {
  if (v.size() != rows_ || v.p() != p_) throw ArgumentError("FMat::set_column: shape mismatch");
  for (size_t r = 0; r < rows_; ++r) set(r, c, v.get(r));
}

FVec FMat::apply(const FVec& v) const {
  if (v.size() != cols_ || v.p() != p_) throw ArgumentError("FMat::apply: dimension mismatch");
  FVec out(p_, rows_);
  if (layout_ == Layout::Packed) {
    for (size_t r = 0; r < rows_; ++r) {
      const uint64_t* a = row_words(r);
      uint64_t acc = 0;
      for (size_t k = 0; k < wpr_; ++k) acc ^= a[k] & v.words()[k];
      if (std::popcount(acc) & 1) out.set(r, 1);
    }
    return out;
  }
  std::vector<uint32_t> vals = v.values();
  for (size_t r = 0; r < rows_; ++r) {
    const uint8_t* a = row_bytes(r);
    uint64_t s = 0;
    for (size_t c = 0; c < cols_; ++c) s += uint64_t{a[c]} * vals[c];
    out.set(r, static_cast<uint32_t>(s % p_));
  }
  return out;
}

FMat FMat::transpose() const {
  FMat t(p_, cols_, rows_, layout_);
  if (layout_ == Layout::Packed) {
    for (size_t r = 0; r < rows_; ++r) {
      const uint64_t* a = row_words(r);
      for (size_t k = 0; k < wpr_; ++k) {
        uint64_t w = a[k];
        while (w) {
          const size_t c = k * 64 + static_cast<size_t>(std::countr_zero(w));
          w &= w - 1;
          t.w_[c * t.wpr_ + (r >> 6)] |= uint64_t{1} << (r & 63);
        }
      }
    }
    return t;
  }
  for (size_t r = 0; r < rows_; ++r)
    for (size_t c = 0; c < cols_; ++c) t.b_[c * rows_ + r] = b_[r * cols_ + c];
  return t;
}

FMat FMat::with_layout(Layout layout) const {
  if (layout == layout_) return *this;
  FMat m(p_, rows_, cols_, layout);
  for (size_t r = 0; r < rows_; ++r)
    for (size_t c = 0; c < cols_; ++c)
      if (uint32_t x = get(r, c)) m.set(r, c, x);
  return m;
}

bool FMat::is_zero() const {
  if (layout_ == Layout::Packed) return std::all_of(w_.begin(), w_.end(), [](uint64_t w) { return w == 0; });
  return std::all_of(b_.begin(), b_.end(), [](uint8_t x) { return x == 0; });
}

bool FMat::is_identity() const {
  if (rows_ != cols_) return false;
  for (size_t r = 0; r < rows_; ++r)
    for (size_t c = 0; c < cols_; ++c)
      if (get(r, c) != (r == c ? 1u : 0u)) return false;
  return true;
}

FMat FMat::operator*(const FMat& o) const {
  if (p_ != o.p_) throw ArgumentError("FMat product: field mismatch");
  if (cols_ != o.rows_) throw ArgumentError("FMat product: dimension mismatch (" + std::to_string(rows_) + "x" +
                                            std::to_string(cols_) + " * " + std::to_string(o.rows_) + "x" +
                                            std::to_string(o.cols_) + ")");
  const bool both_packed = layout_ == Layout::Packed && o.layout_ == Layout::Packed;
  FMat out(p_, rows_, o.cols_, both_packed ? Layout::Packed : Layout::Bytes);
  if (both_packed) {
    for (size_t r = 0; r < rows_; ++r) {
      uint64_t* dst = out.row_words(r);
      const uint64_t* a = row_words(r);
      for (size_t k = 0; k < wpr_; ++k) {
        uint64_t w = a[k];
        while (w) {
          const size_t j = k * 64 + static_cast<size_t>(std::countr_zero(w));
          w &= w - 1;
          const uint64_t* src = o.row_words(j);
          for (size_t t = 0; t < out.wpr_; ++t) dst[t] ^= src[t];
        }
      }
    }
    return out;
  }
  std::vector<uint64_t> acc(o.cols_);
  for (size_t r = 0; r < rows_; ++r) {
    std::fill(acc.begin(), acc.end(), 0);
    for (size_t k = 0; k < cols_; ++k) {
      const uint32_t a = get(r, k);
      if (!a) continue;
      for (size_t c = 0; c < o.cols_; ++c)
        if (uint32_t b = o.get(k, c)) acc[c] += uint64_t{a} * b;
    }
    for (size_t c = 0; c < o.cols_; ++c) out.set(r, c, static_cast<uint32_t>(acc[c] % p_));
  }
  return out;
}

FMat FMat::operator+(const FMat& o) const {
  if (p_ != o.p_ || rows_ != o.rows_ || cols_ != o.cols_) throw ArgumentError("FMat sum: shape mismatch");
  if (layout_ == Layout::Packed && o.layout_ == Layout::Packed) {
    FMat out = *this;
    for (size_t k = 0; k < w_.size(); ++k) out.w_[k] ^= o.w_[k];
    return out;
  }
  FMat out(p_, rows_, cols_, layout_);
  for (size_t r = 0; r < rows_; ++r)
    for (size_t c = 0; c < cols_; ++c) out.set(r, c, (get(r, c) + o.get(r, c)) % p_);
  return out;
}

FMat FMat::operator-(const FMat& o) const { return *this + o.scaled(p_ - 1); }

FMat FMat::scaled(uint32_t c) const {
  c %= p_;
  FMat out(p_, rows_, cols_, layout_);
  if (c == 0) return out;
  if (layout_ == Layout::Packed) return *this;
  for (size_t k = 0; k < b_.size(); ++k) out.b_[k] = static_cast<uint8_t>(mulmod(b_[k], c, p_));
  return out;
}

bool operator==(const FMat& a, const FMat& b) {
  if (a.p_ != b.p_ || a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  if (a.layout_ == b.layout_) return a.w_ == b.w_ && a.b_ == b.b_;
  for (size_t r = 0; r < a.rows_; ++r)
    for (size_t c = 0; c < a.cols_; ++c)
      if (a.get(r, c) != b.get(r, c)) return false;
  return true;
}

std::string FMat::to_string() const {
  std::ostringstream os;
  os << '[';
  for (size_t r = 0; r < rows_; ++r) {
    if (r) os << ';';
    for (size_t c = 0; c < cols_; ++c) os << (c ? " " : "") << get(r, c);
  }
  os << ']';
  return os.str();
}

FMat kron(const FMat& a, const FMat& b) {
  if (a.p() != b.p()) throw ArgumentError("kron: field mismatch");
  const uint32_t p = a.p();
  FMat out(p, a.rows() * b.rows(), a.cols() * b.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) {
      const uint32_t x = a.get(i, j);
      if (!x) continue;
      for (size_t k = 0; k < b.rows(); ++k)
        for (size_t l = 0; l < b.cols(); ++l)
          if (uint32_t y = b.get(k, l)) out.set(i * b.rows() + k, j * b.cols() + l, (x * y) % p);
    }
  return out;
}

FMat hstack(const FMat& a, const FMat& b) {
  if (a.p() != b.p() || a.rows() != b.rows()) throw ArgumentError("hstack: shape mismatch");
  FMat out(a.p(), a.rows(), a.cols() + b.cols());
  for (size_t r = 0; r < a.rows(); ++r) {
    for (size_t c = 0; c < a.cols(); ++c)
      if (uint32_t x = a.get(r, c)) out.set(r, c, x);
    for (size_t c = 0; c < b.cols(); ++c)
      if (uint32_t x = b.get(r, c)) out.set(r, a.cols() + c, x);
  }
  return out;
}

FMat vstack(const FMat& a, const FMat& b) {
  if (a.p() != b.p() || a.cols() != b.cols()) throw ArgumentError("vstack: shape mismatch");
  FMat out(a.p(), a.rows() + b.rows(), a.cols());
  for (size_t r = 0; r < a.rows(); ++r) out.set_row(r, a.row(r));
  for (size_t r = 0; r < b.rows(); ++r) out.set_row(a.rows() + r, b.row(r));
  return out;
}

FMat block_diag(const FMat& a, const FMat& b) {
  if (a.p() != b.p()) throw ArgumentError("block_diag: field mismatch");
  FMat out(a.p(), a.rows() + b.rows(), a.cols() + b.cols());
  for (size_t r = 0; r < a.rows(); ++r)
    for (size_t c = 0; c < a.cols(); ++c)
      if (uint32_t x = a.get(r, c)) out.set(r, c, x);
  for (size_t r = 0; r < b.rows(); ++r)
    for (size_t c = 0; c < b.cols(); ++c)
      if (uint32_t x = b.get(r, c)) out.set(a.rows() + r, a.cols() + c, x);
  return out;
}

// ---------------------------------------------------------------- elimination

namespace {

void rref_packed(FMat& m, std::vector<size_t>& pivots) {
  const size_t wpr = m.words_per_row();
  size_t r = 0;
  for (size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    const size_t k = c >> 6;
    const uint64_t bit = uint64_t{1} << (c & 63);
    size_t found = m.rows();
    for (size_t i = r; i < m.rows(); ++i)
      if (m.row_words(i)[k] & bit) {
        found = i;
        break;
      }
    if (found == m.rows()) continue;
    if (found != r) std::swap_ranges(m.row_words(found), m.row_words(found) + wpr, m.row_words(r));
    const uint64_t* piv = m.row_words(r);
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i == r) continue;
      uint64_t* row = m.row_words(i);
      if (row[k] & bit)
        for (size_t t = k; t < wpr; ++t) row[t] ^= piv[t];
    }
    pivots.push_back(c);
    ++r;
  }
}

void rref_bytes(FMat& m, std::vector<size_t>& pivots) {
  const uint32_t p = m.p();
  const size_t n = m.cols();
  size_t r = 0;
  for (size_t c = 0; c < n && r < m.rows(); ++c) {
    size_t found = m.rows();
    for (size_t i = r; i < m.rows(); ++i)
      if (m.row_bytes(i)[c]) {
        found = i;
        break;
      }
    if (found == m.rows()) continue;
    if (found != r) std::swap_ranges(m.row_bytes(found), m.row_bytes(found) + n, m.row_bytes(r));
    uint8_t* piv = m.row_bytes(r);
    if (piv[c] != 1) {
      const uint32_t inv = field_inv(p, piv[c]);
      for (size_t j = c; j < n; ++j) piv[j] = static_cast<uint8_t>((piv[j] * inv) % p);
    }
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i == r) continue;
      uint8_t* row = m.row_bytes(i);
      if (row[c]) byte_axpy(row, piv, c, n, p - row[c], p);
    }
    pivots.push_back(c);
    ++r;
  }
}

}  // namespace

RrefResult rref(const FMat& m) {
  RrefResult res;
  res.rref = m;
  if (m.layout() == FMat::Layout::Packed)
    rref_packed(res.rref, res.pivots);
  else
    rref_bytes(res.rref, res.pivots);
  res.rank = res.pivots.size();
  return res;
}

size_t rank(const FMat& m) { return rref(m).rank; }

FMat kernel_basis(const FMat& m) {
  const RrefResult rr = rref(m);
  const uint32_t p = m.p();
  std::vector<bool> is_piv(m.cols(), false);
  for (size_t c : rr.pivots) is_piv[c] = true;
  std::vector<size_t> free_cols;
  for (size_t c = 0; c < m.cols(); ++c)
    if (!is_piv[c]) free_cols.push_back(c);
  FMat k(p, m.cols(), free_cols.size());
  for (size_t j = 0; j < free_cols.size(); ++j) {
    const size_t f = free_cols[j];
    k.set(f, j, 1);
    for (size_t i = 0; i < rr.pivots.size(); ++i)
      if (uint32_t x = rr.rref.get(i, f)) k.set(rr.pivots[i], j, (p - x) % p);
  }
  return k;
}

std::optional<std::vector<uint32_t>> solve(const FMat& a, std::span<const uint32_t> b) {
  if (b.size() != a.rows()) throw ArgumentError("solve: dimension mismatch");
  const uint32_t p = a.p();
  const size_t n = a.cols();
  // Columns reversed so that pivots fall on the last possible variables; free
  // variables (set to 0) are then the earliest ones, giving the lex-least solution.
  FMat aug(p, a.rows(), n + 1, a.layout());
  for (size_t r = 0; r < a.rows(); ++r) {
    for (size_t c = 0; c < n; ++c)
      if (uint32_t x = a.get(r, c)) aug.set(r, n - 1 - c, x);
    aug.set(r, n, b[r] % p);
  }
  const RrefResult rr = rref(aug);
  if (!rr.pivots.empty() && rr.pivots.back() == n) return std::nullopt;
  std::vector<uint32_t> x(n, 0);
  for (size_t i = 0; i < rr.pivots.size(); ++i) x[n - 1 - rr.pivots[i]] = rr.rref.get(i, n);
  return x;
}

std::optional<FMat> inverse(const FMat& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const size_t n = m.rows();
  const RrefResult rr = rref(hstack(m, FMat::identity(m.p(), n)));
  if (rr.rank < n || (n > 0 && rr.pivots[n - 1] >= n)) return std::nullopt;
  FMat inv(m.p(), n, n);
  for (size_t r = 0; r < n; ++r)
    for (size_t c = 0; c < n; ++c)
      if (uint32_t x = rr.rref.get(r, n + c)) inv.set(r, c, x);
  return inv;
}

// ---------------------------------------------------------------- EchelonBasis

EchelonBasis::EchelonBasis(uint32_t p, size_t ambient) : p_(p), n_(ambient), where_(ambient, -1) {
  check_field(p);
  if (p == 2) mask_.assign(words_for(ambient), 0);
}

FVec EchelonBasis::reduce(FVec v) const {
  if (v.size() != n_ || v.p() != p_) throw ArgumentError("EchelonBasis::reduce: dimension mismatch");
  if (rows_.empty()) return v;
  if (p_ == 2) {
    uint64_t* w = v.words();
    const size_t nw = v.num_words();
    // Pivot entries of v are only changed by their own row, so the hit set can
    // be read word by word while rows are being added.
    for (size_t k = 0; k < nw; ++k) {
      uint64_t hits = w[k] & mask_[k];
      while (hits) {
        const size_t idx = k * 64 + static_cast<size_t>(std::countr_zero(hits));
        hits &= hits - 1;
        const uint64_t* src = rows_[static_cast<size_t>(where_[idx])].words();
        for (size_t t = 0; t < nw; ++t) w[t] ^= src[t];
      }
    }
    return v;
  }
  uint8_t* b = v.bytes();
  for (size_t i = 0; i < n_; ++i) {
    if (b[i] == 0 || where_[i] < 0) continue;
    byte_axpy(b, rows_[static_cast<size_t>(where_[i])].bytes(), 0, n_, p_ - b[i], p_);
  }
  return v;
}

void EchelonBasis::place(FVec v, size_t q) {
  const size_t pos = static_cast<size_t>(std::lower_bound(pivots_.begin(), pivots_.end(), q) - pivots_.begin());
  rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(v));
  pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), q);
  for (size_t i = pos; i < pivots_.size(); ++i) where_[pivots_[i]] = static_cast<int64_t>(i);
  if (p_ == 2) mask_[q >> 6] |= uint64_t{1} << (q & 63);
}

bool EchelonBasis::insert(FVec v) {
  v = reduce(std::move(v));
  const size_t q = v.first_nonzero();
  if (q == n_) return false;
  if (uint32_t c = v.get(q); c != 1) v.scale(field_inv(p_, c));
  for (auto& row : rows_) {
    const uint32_t c = row.get(q);
    if (c) row.axpy(p_ - c, v);
  }
  place(std::move(v), q);
  return true;
}

EchelonBasis EchelonBasis::kernel_of(const FMat& m) {
  const RrefResult rr = rref(m);
  const uint32_t p = m.p();
  EchelonBasis out(p, m.cols());
  std::vector<bool> is_piv(m.cols(), false);
  for (size_t c : rr.pivots) is_piv[c] = true;
  if (m.cols() == 0) return out;
  // Column f of the RREF, read once per free column.
  const FMat rt = rr.rref.transpose();
  out.rows_.reserve(m.cols() - rr.rank);
  out.pivots_.reserve(m.cols() - rr.rank);
  for (size_t f = 0; f < m.cols(); ++f) {
    if (is_piv[f]) continue;
    FVec v(p, m.cols());
    v.set(f, 1);
    for (size_t i = 0; i < rr.rank; ++i)
      if (uint32_t x = rt.get(f, i)) v.set(rr.pivots[i], p - x);
    out.where_[f] = static_cast<int64_t>(out.rows_.size());
    out.rows_.push_back(std::move(v));
    out.pivots_.push_back(f);
    if (p == 2) out.mask_[f >> 6] |= uint64_t{1} << (f & 63);
  }
  return out;
}

EchelonBasis EchelonBasis::column_span(const FMat& m) {
  const RrefResult rr = rref(m.transpose());
  EchelonBasis out(m.p(), m.rows());
  for (size_t i = 0; i < rr.rank; ++i) out.place(rr.rref.row(i), rr.pivots[i]);
  return out;
}

std::vector<uint32_t> EchelonBasis::coordinates(const FVec& v) const {
  std::vector<uint32_t> out(pivots_.size());
  for (size_t i = 0; i < pivots_.size(); ++i) out[i] = v.get(pivots_[i]);
  return out;
}

std::vector<uint32_t> EchelonBasis::quotient_coordinates(const FVec& v) const {
  const FVec r = reduce(v);
  std::vector<uint32_t> out;
  out.reserve(n_ - pivots_.size());
  for (size_t i = 0; i < n_; ++i)
    if (where_[i] < 0) out.push_back(r.get(i));
  return out;
}

std::vector<size_t> EchelonBasis::non_pivots() const {
  std::vector<size_t> out;
  for (size_t i = 0; i < n_; ++i)
    if (where_[i] < 0) out.push_back(i);
  return out;
}

FMat EchelonBasis::as_columns() const { return FMat::from_columns(p_, n_, rows_); }

}  // namespace fonctex
