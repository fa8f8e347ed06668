#include "fonctex/ring.hpp"

#include <charconv>
#include <limits>
#include <sstream>

#include "fonctex/error.hpp"

namespace fonctex {

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

uint64_t gcd_u64(uint64_t a, uint64_t b) {
  while (b != 0) {
    uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

FinRing::FinRing(uint32_t modulus) : m_(modulus) {
  if (modulus == 0) throw ArgumentError("ring modulus must be >= 1");
}

FinRing FinRing::parse(std::string_view spec) {
  if (spec.size() < 3 || spec.substr(0, 2) != "Z/") throw UsageError("bad ring spec '" + std::string(spec) + "'");
  auto digits = spec.substr(2);
  uint32_t m = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), m);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || m == 0)
    throw UsageError("bad ring spec '" + std::string(spec) + "'");
  return FinRing(m);
}

uint32_t FinRing::reduce(int64_t a) const {
  int64_t r = a % static_cast<int64_t>(m_);
  if (r < 0) r += m_;
  return static_cast<uint32_t>(r);
}

RMat::RMat(FinRing ring, size_t rows, size_t cols) : ring_(ring), rows_(rows), cols_(cols), e_(rows * cols, 0) {}

RMat::RMat(FinRing ring, size_t rows, size_t cols, std::vector<uint32_t> entries)
    : ring_(ring), rows_(rows), cols_(cols), e_(std::move(entries)) {
  if (e_.size() != rows * cols) throw ArgumentError("RMat: entry count does not match shape");
  for (auto& x : e_) x %= ring_.modulus();
}

RMat RMat::identity(FinRing ring, size_t n) {
  RMat m(ring, n, n);
  for (size_t i = 0; i < n; ++i) m.e_[i * n + i] = ring.one();
  return m;
}

RMat RMat::from_index(FinRing ring, size_t rows, size_t cols, uint64_t index) {
  RMat m(ring, rows, cols);
  const uint64_t mod = ring.modulus();
  for (size_t k = rows * cols; k-- > 0;) {
    m.e_[k] = static_cast<uint32_t>(index % mod);
    index /= mod;
  }
  return m;
}

uint64_t RMat::index() const {
  uint64_t idx = 0;
  for (uint32_t x : e_) idx = idx * ring_.modulus() + x;
  return idx;
}

RMat RMat::reduced(const FinRing& quotient) const {
  if (ring_.modulus() % quotient.modulus() != 0) throw ArgumentError("reduction target is not a quotient ring");
  RMat out(quotient, rows_, cols_);
  for (size_t k = 0; k < e_.size(); ++k) out.e_[k] = e_[k] % quotient.modulus();
  return out;
}

std::string RMat::to_string() const {
  std::ostringstream os;
  os << '[';
  for (size_t r = 0; r < rows_; ++r) {
    if (r) os << ';';
    for (size_t c = 0; c < cols_; ++c) os << (c ? " " : "") << at(r, c);
  }
  os << ']';
  return os.str();
}

RMat mat_mul(const RMat& a, const RMat& b) {
  if (!(a.ring() == b.ring())) throw ArgumentError("mat_mul: ring mismatch");
  if (a.cols() != b.rows()) throw ArgumentError("mat_mul: dimension mismatch");
  const uint64_t m = a.ring().modulus();
  std::vector<uint32_t> e(a.rows() * b.cols(), 0);
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < b.cols(); ++j) {
      uint64_t s = 0;
      for (size_t k = 0; k < a.cols(); ++k) s += uint64_t{a.at(i, k)} * b.at(k, j);
      e[i * b.cols() + j] = static_cast<uint32_t>(s % m);
    }
  return RMat(a.ring(), a.rows(), b.cols(), std::move(e));
}

RMat mat_add(const RMat& a, const RMat& b) {
  if (!(a.ring() == b.ring())) throw ArgumentError("mat_add: ring mismatch");
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ArgumentError("mat_add: dimension mismatch");
  std::vector<uint32_t> e(a.entries().size());
  for (size_t k = 0; k < e.size(); ++k) e[k] = a.ring().add(a.entries()[k], b.entries()[k]);
  return RMat(a.ring(), a.rows(), a.cols(), std::move(e));
}

RMat block_diag(const RMat& a, const RMat& b) {
  if (!(a.ring() == b.ring())) throw ArgumentError("block_diag: ring mismatch");
  RMat out(a.ring(), a.rows() + b.rows(), a.cols() + b.cols());
  for (size_t r = 0; r < a.rows(); ++r)
    for (size_t c = 0; c < a.cols(); ++c) out.set(r, c, a.at(r, c));
  for (size_t r = 0; r < b.rows(); ++r)
    for (size_t c = 0; c < b.cols(); ++c) out.set(a.rows() + r, a.cols() + c, b.at(r, c));
  return out;
}

uint64_t hom_count(const FinRing& ring, size_t rows, size_t cols) {
  const uint64_t m = ring.modulus();
  uint64_t n = 1;
  for (size_t k = 0; k < rows * cols; ++k) {
    if (m != 0 && n > std::numeric_limits<uint64_t>::max() / m) return std::numeric_limits<uint64_t>::max();
    n *= m;
  }
  return n;
}

std::vector<RMat> enumerate_hom(const FinRing& ring, size_t rows, size_t cols, uint64_t cap) {
  const uint64_t n = hom_count(ring, rows, cols);
  if (n > cap) throw CapExceeded("enumerate_hom " + std::to_string(rows) + "x" + std::to_string(cols) + " over " + ring.spec(), n, cap);
  std::vector<RMat> out;
  out.reserve(n);
  for (uint64_t i = 0; i < n; ++i) out.push_back(RMat::from_index(ring, rows, cols, i));
  return out;
}

}  // namespace fonctex
