#include "nio/matrix.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "nio/errors.hpp"
#include "nio/kernels.hpp"

static_assert(std::endian::native == std::endian::little,
              "matrix dump assumes a little-endian host");

namespace nio {

StochasticMatrix StochasticMatrix::identity(std::size_t n) {
  StochasticMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

std::vector<double> StochasticMatrix::apply(const std::vector<double>& f) const {
  if (f.size() != n_) throw DomainError("vector length does not match matrix order");
  std::vector<double> out(n_);
  kernels::apply_row(out.data(), f.data(), data_.data(), n_);
  return out;
}

StochasticMatrix StochasticMatrix::multiply(const StochasticMatrix& other) const {
  if (other.n_ != n_) throw DomainError("matrix order mismatch");
  StochasticMatrix out(n_);
  kernels::matmul(out.data(), data_.data(), other.data(), n_);
  return out;
}

double StochasticMatrix::dobrushin() const {
  return kernels::dobrushin_coefficient(data_.data(), n_);
}

void StochasticMatrix::renormalize_rows() {
  kernels::renormalize_rows(data_.data(), n_);
}

double StochasticMatrix::max_row_sum_error() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n_; ++j) s += at(i, j);
    worst = std::max(worst, std::abs(s - 1.0));
  }
  return worst;
}

double StochasticMatrix::min_entry() const {
  double m = 0.0;
  for (double v : data_) m = std::min(m, v);
  return m;
}

namespace {

constexpr char kMagic[4] = {'U', 'L', 'A', 'M'};
constexpr std::size_t kHeaderSize = 16;

}  // namespace

void StochasticMatrix::write_binary(const std::string& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  char header[kHeaderSize] = {};
  std::memcpy(header, kMagic, 4);
  auto order = static_cast<std::uint32_t>(n_);
  std::memcpy(header + 4, &order, 4);
  out.write(header, kHeaderSize);
  out.write(reinterpret_cast<const char*>(data_.data()),
            static_cast<std::streamsize>(data_.size() * sizeof(double)));
  if (!out) throw IoError("short write to " + path);
}

StochasticMatrix StochasticMatrix::read_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  char header[kHeaderSize];
  in.read(header, kHeaderSize);
  if (!in || std::memcmp(header, kMagic, 4) != 0) {
    throw IoError(path + " is not a matrix dump");
  }
  std::uint32_t order = 0;
  std::memcpy(&order, header + 4, 4);
  if (order == 0) throw IoError(path + " has zero order");
  StochasticMatrix m(order);
  in.read(reinterpret_cast<char*>(m.data()),
          static_cast<std::streamsize>(m.n() * m.n() * sizeof(double)));
  if (!in) throw IoError(path + " is truncated");
  return m;
}

SupportMatrix SupportMatrix::from(const StochasticMatrix& m) {
  SupportMatrix s;
  s.n_ = m.n();
  s.words_ = (s.n_ + 63) / 64;
  s.bits_.assign(s.n_ * s.words_, 0);
  for (std::size_t i = 0; i < s.n_; ++i) {
    std::uint64_t* row = s.bits_.data() + i * s.words_;
    for (std::size_t j = 0; j < s.n_; ++j) {
      if (m.at(i, j) > 0.0) row[j / 64] |= std::uint64_t{1} << (j % 64);
    }
  }
  return s;
}

SupportMatrix SupportMatrix::multiply(const SupportMatrix& other) const {
  if (other.n_ != n_) throw DomainError("matrix order mismatch");
  SupportMatrix out;
  out.n_ = n_;
  out.words_ = words_;
  out.bits_.assign(n_ * words_, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    const std::uint64_t* row = bits_.data() + i * words_;
    std::uint64_t* dst = out.bits_.data() + i * words_;
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t word = row[w];
      while (word != 0) {
        auto k = 64 * w + static_cast<std::size_t>(std::countr_zero(word));
        word &= word - 1;
        const std::uint64_t* src = other.bits_.data() + k * words_;
        for (std::size_t v = 0; v < words_; ++v) dst[v] |= src[v];
      }
    }
  }
  return out;
}

bool SupportMatrix::rows_intersect(std::size_t i, std::size_t j) const {
  const std::uint64_t* ri = bits_.data() + i * words_;
  const std::uint64_t* rj = bits_.data() + j * words_;
  for (std::size_t w = 0; w < words_; ++w) {
    if ((ri[w] & rj[w]) != 0) return true;
  }
  return false;
}

bool SupportMatrix::all_rows_intersect() const {
  for (std::size_t i = 0; i + 1 < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (!rows_intersect(i, j)) return false;
    }
  }
  return true;
}

AnnealedOperator::AnnealedOperator(StochasticMatrix det, StochasticMatrix noise)
    : det_(std::move(det)), noise_(std::move(noise)) {
  if (det_.n() != noise_.n()) throw DomainError("factor order mismatch");
}

std::vector<double> AnnealedOperator::apply(const std::vector<double>& f) const {
  return noise_.apply(det_.apply(f));
}

StochasticMatrix AnnealedOperator::materialize() const {
  if (n() > kMaterializeLimit) {
    throw DomainError("annealed matrix too large to materialize; use apply");
  }
  return det_.multiply(noise_);
}

SupportMatrix AnnealedOperator::support() const {
  return SupportMatrix::from(det_).multiply(SupportMatrix::from(noise_));
}

}  // namespace nio
