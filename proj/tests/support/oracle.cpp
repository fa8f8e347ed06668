#include "oracle.hpp"

namespace oracle {

namespace {
uint32_t inv(uint32_t a, uint32_t p) {
  for (uint32_t x = 1; x < p; ++x)
    if (a * x % p == 1) return x;
  return 0;
}
}  // namespace

Mat to_mat(const fonctex::FMat& m) {
  Mat r(m.rows(), std::vector<uint32_t>(m.cols()));
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) r[i][j] = m.get(i, j);
  return r;
}

size_t rank(Mat m, uint32_t p) {
  size_t r = 0;
  const size_t cols = m.empty() ? 0 : m[0].size();
  for (size_t c = 0; c < cols && r < m.size(); ++c) {
    size_t piv = r;
    while (piv < m.size() && m[piv][c] % p == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[r], m[piv]);
    const uint32_t iv = inv(m[r][c] % p, p);
    for (auto& x : m[r]) x = x * iv % p;
    for (size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      const uint32_t f = m[i][c];
      for (size_t j = 0; j < cols; ++j) m[i][j] = (m[i][j] + (p - f) * m[r][j]) % p;
    }
    ++r;
  }
  return r;
}

Mat mul(const Mat& a, const Mat& b, uint32_t p) {
  const size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  Mat r(n, std::vector<uint32_t>(m, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t t = 0; t < k; ++t)
      for (size_t j = 0; j < m; ++j) r[i][j] = (r[i][j] + a[i][t] * b[t][j]) % p;
  return r;
}

Mat random_mat(std::mt19937_64& rng, uint32_t p, size_t rows, size_t cols, double density) {
  std::bernoulli_distribution nz(density);
  std::uniform_int_distribution<uint32_t> val(1, p - 1);
  Mat m(rows, std::vector<uint32_t>(cols, 0));
  for (auto& row : m)
    for (auto& x : row)
      if (nz(rng)) x = val(rng);
  return m;
}

fonctex::FMat to_fmat(const Mat& m, uint32_t p, size_t cols) { return fonctex::FMat::from_rows(p, m, cols); }

std::vector<std::vector<uint32_t>> all_solutions(const Mat& a, const std::vector<uint32_t>& b, uint32_t p, size_t n) {
  std::vector<std::vector<uint32_t>> out;
  std::vector<uint32_t> x(n, 0);
  for (;;) {
    bool ok = true;
    for (size_t i = 0; i < a.size() && ok; ++i) {
      uint32_t s = 0;
      for (size_t j = 0; j < n; ++j) s = (s + a[i][j] * x[j]) % p;
      ok = s == b[i] % p;
    }
    if (ok) out.push_back(x);
    size_t k = n;
    while (k > 0) {
      --k;
      if (++x[k] < p) break;
      x[k] = 0;
      if (k == 0) return out;
    }
    if (n == 0) return out;
  }
}

}  // namespace oracle
