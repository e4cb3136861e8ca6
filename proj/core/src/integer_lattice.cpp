#include "voabranch/integer_lattice.hpp"

#include <numeric>
#include <stdexcept>
#include <utility>

namespace voabranch {
namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("lattice arithmetic overflow");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("lattice arithmetic overflow");
  return r;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// row_a -= k * row_b
void axpy(IntVec& row_a, std::int64_t k, const IntVec& row_b) {
  if (k == 0) return;
  for (std::size_t j = 0; j < row_a.size(); ++j)
    row_a[j] = checked_sub(row_a[j], checked_mul(k, row_b[j]));
}

}  // namespace

IntegerLattice::IntegerLattice(std::size_t dim, const std::vector<IntVec>& generators)
    : dim_(dim), generators_(generators) {
  std::vector<IntVec> rows;
  for (const auto& g : generators) {
    if (g.size() != dim) throw std::invalid_argument("generator dimension mismatch");
    rows.push_back(g);
  }
  std::size_t top = 0;
  for (std::size_t col = 0; col < dim && top < rows.size(); ++col) {
    // Euclid on column `col` among rows top..end until one nonzero entry remains.
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t r = top; r < rows.size(); ++r)
        if (rows[r][col] != 0 &&
            (best == rows.size() || std::llabs(rows[r][col]) < std::llabs(rows[best][col])))
          best = r;
      if (best == rows.size()) break;
      std::swap(rows[top], rows[best]);
      bool done = true;
      for (std::size_t r = top + 1; r < rows.size(); ++r) {
        if (rows[r][col] == 0) continue;
        axpy(rows[r], rows[r][col] / rows[top][col], rows[top]);
        if (rows[r][col] != 0) done = false;
      }
      if (done) break;
    }
    if (rows[top][col] == 0) continue;
    if (rows[top][col] < 0)
      for (auto& x : rows[top]) x = -x;
    // Reduce the entries above the pivot into [0, pivot).
    for (std::size_t r = 0; r < top; ++r)
      axpy(rows[r], floor_div(rows[r][col], rows[top][col]), rows[top]);
    pivots_.push_back(col);
    ++top;
  }
  rows.resize(top);
  basis_ = std::move(rows);
}

IntVec IntegerLattice::reduce(IntVec x) const {
  if (x.size() != dim_) throw std::invalid_argument("vector dimension mismatch");
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    std::int64_t p = basis_[i][pivots_[i]];
    axpy(x, floor_div(x[pivots_[i]], p), basis_[i]);
  }
  return x;
}

bool IntegerLattice::contains(const IntVec& x) const {
  IntVec r = reduce(x);
  for (auto v : r)
    if (v != 0) return false;
  return true;
}

bool IntegerLattice::contains(const RatVec& x) const {
  auto integral = to_integral(x);
  return integral && contains(*integral);
}

Integer IntegerLattice::index_in_ambient() const {
  if (rank() != dim_) return 0;
  Integer idx = 1;
  for (std::size_t i = 0; i < basis_.size(); ++i) idx *= static_cast<long>(basis_[i][pivots_[i]]);
  return idx;
}

std::vector<bool> IntegerLattice::support() const {
  std::vector<bool> s(dim_, false);
  for (const auto& g : generators_)
    for (std::size_t j = 0; j < dim_; ++j)
      if (g[j] != 0) s[j] = true;
  return s;
}

IntVec operator+(const IntVec& a, const IntVec& b) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

IntVec operator-(const IntVec& a, const IntVec& b) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

IntVec operator*(std::int64_t k, const IntVec& a) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_mul(k, a[i]);
  return r;
}

RatVec to_rational(const IntVec& v) {
  RatVec r;
  r.reserve(v.size());
  for (auto x : v) r.emplace_back(static_cast<long>(x));
  return r;
}

std::optional<IntVec> to_integral(const RatVec& v) {
  IntVec r;
  r.reserve(v.size());
  for (const auto& x : v) {
    if (!is_integer(x)) return std::nullopt;
    r.push_back(to_int64(x.get_num()));
  }
  return r;
}

}  // namespace voabranch
