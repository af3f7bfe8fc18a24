#include "posso/kernels.hpp"

#include <limits>

namespace posso::kernels {

Modulus::Modulus(std::uint32_t prime) : p(prime) {
  barrett = static_cast<std::uint64_t>((static_cast<unsigned __int128>(1) << 64) / p);
  std::uint64_t sq = static_cast<std::uint64_t>(p - 1) * (p - 1);
  max_delayed = sq == 0 ? std::numeric_limits<std::uint64_t>::max()
                        : (std::numeric_limits<std::uint64_t>::max() - p) / sq;
}

namespace {

void mul_acc_scalar(std::uint64_t* acc, const Elem* x, Elem a, std::size_t n) {
  const std::uint64_t a64 = a;
  for (std::size_t i = 0; i < n; ++i) acc[i] += a64 * x[i];
}

void reduce_scalar(const std::uint64_t* acc, Elem* out, std::size_t n, const Modulus& m) {
  for (std::size_t i = 0; i < n; ++i) out[i] = m.reduce(acc[i]);
}

void axpy_scalar(Elem* y, const Elem* x, Elem a, std::size_t n, const Modulus& m) {
  const std::uint64_t a64 = a;
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = static_cast<Elem>((y[i] + a64 * x[i]) % m.p);
  }
}

void scale_scalar(Elem* y, Elem a, std::size_t n, const Modulus& m) {
  const std::uint64_t a64 = a;
  for (std::size_t i = 0; i < n; ++i) y[i] = static_cast<Elem>(a64 * y[i] % m.p);
}

void add_scalar(Elem* y, const Elem* x, std::size_t n, const Modulus& m) {
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t s = y[i] + x[i];
    y[i] = s >= m.p ? s - m.p : s;
  }
}

void sub_scalar(Elem* y, const Elem* x, std::size_t n, const Modulus& m) {
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = y[i] >= x[i] ? y[i] - x[i] : y[i] + m.p - x[i];
  }
}

void mul_acc4_scalar(std::uint64_t* acc, std::size_t ldc, const Elem* a, const Elem* const* b,
                     std::size_t bs, std::size_t depth, std::size_t n) {
  for (std::size_t k = 0; k < depth; ++k) {
    const Elem* bk = b[k];
    for (std::size_t r = 0; r < 4; ++r) {
      const std::uint64_t ar = a[4 * k + r];
      if (ar == 0) continue;
      std::uint64_t* row = acc + r * ldc;
      for (std::size_t c = 0; c < n; ++c) row[c] += ar * bk[(c / 8) * bs + c % 8];
    }
  }
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar",     mul_acc_scalar, reduce_scalar, axpy_scalar,
                                 scale_scalar, add_scalar,     sub_scalar,    mul_acc4_scalar};
  return table;
}

}  // namespace posso::kernels
