#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fonctex/caps.hpp"

namespace fonctex {

bool is_prime(uint64_t n);
uint64_t gcd_u64(uint64_t a, uint64_t b);

/// The ring Z/m, elements represented by 0..m-1.
class FinRing {
 public:
  FinRing() = default;
  explicit FinRing(uint32_t modulus);

  // Grammar: "Z/" followed by a decimal m >= 1.
  static FinRing parse(std::string_view spec);

  uint32_t modulus() const { return m_; }
  bool is_field() const { return is_prime(m_); }
  std::string spec() const { return "Z/" + std::to_string(m_); }

  uint32_t add(uint32_t a, uint32_t b) const { return static_cast<uint32_t>((uint64_t{a} + b) % m_); }
  uint32_t sub(uint32_t a, uint32_t b) const { return static_cast<uint32_t>((uint64_t{a} + m_ - b) % m_); }
  uint32_t neg(uint32_t a) const { return a == 0 ? 0 : m_ - a; }
  uint32_t mul(uint32_t a, uint32_t b) const { return static_cast<uint32_t>((uint64_t{a} * b) % m_); }
  uint32_t reduce(int64_t a) const;
  bool is_unit(uint32_t a) const { return gcd_u64(a % m_, m_) == 1; }
  uint32_t one() const { return m_ == 1 ? 0 : 1; }

  friend bool operator==(const FinRing& a, const FinRing& b) { return a.m_ == b.m_; }

 private:
  uint32_t m_ = 2;
};

/// A rows x cols matrix over Z/m, row-major.
class RMat {
 public:
  RMat() = default;
  RMat(FinRing ring, size_t rows, size_t cols);
  RMat(FinRing ring, size_t rows, size_t cols, std::vector<uint32_t> entries);

  static RMat identity(FinRing ring, size_t n);
  // Inverse of index(): base-m digits, first entry most significant.
  static RMat from_index(FinRing ring, size_t rows, size_t cols, uint64_t index);

  const FinRing& ring() const { return ring_; }
  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  uint32_t at(size_t r, size_t c) const { return e_[r * cols_ + c]; }
  void set(size_t r, size_t c, uint32_t v) { e_[r * cols_ + c] = v % ring_.modulus(); }
  const std::vector<uint32_t>& entries() const { return e_; }

  // Position in the canonical (lexicographic row-major) enumeration.
  uint64_t index() const;

  // Entrywise reduction into a quotient ring Z/q, q | m.
  RMat reduced(const FinRing& quotient) const;

  std::string to_string() const;

  friend bool operator==(const RMat& a, const RMat& b) {
    return a.ring_ == b.ring_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }

 private:
  FinRing ring_;
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<uint32_t> e_;
};

RMat mat_mul(const RMat& a, const RMat& b);
RMat mat_add(const RMat& a, const RMat& b);
RMat block_diag(const RMat& a, const RMat& b);

// m^(rows*cols), saturating at UINT64_MAX.
uint64_t hom_count(const FinRing& ring, size_t rows, size_t cols);

// All rows x cols matrices in canonical order. Throws CapExceeded above the cap.
std::vector<RMat> enumerate_hom(const FinRing& ring, size_t rows, size_t cols,
                                uint64_t cap = default_caps().enumeration);

}  // namespace fonctex
