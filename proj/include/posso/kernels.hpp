#pragma once

// Data-parallel inner loops over F_p. Every kernel has a portable scalar
// reference implementation and, where the CPU supports it, an AVX2 variant.
// The variant is picked once at runtime; both must agree bit for bit.

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "posso/field.hpp"

namespace posso::kernels {

/// Precomputed reduction data for a prime p < 2^31.
struct Modulus {
  explicit Modulus(std::uint32_t prime);

  std::uint32_t p;
  std::uint64_t barrett;      // floor(2^64 / p)
  std::uint64_t max_delayed;  // products of two residues addable to a residue without overflow

  std::uint32_t reduce(std::uint64_t v) const noexcept {
    std::uint64_t q = static_cast<std::uint64_t>((static_cast<unsigned __int128>(v) * barrett) >> 64);
    std::uint64_t r = v - q * p;
    while (r >= p) r -= p;
    return static_cast<std::uint32_t>(r);
  }

  /// Shoup companion of a multiplier: floor(a * 2^32 / p).
  std::uint32_t shoup(std::uint32_t a) const noexcept {
    return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) << 32) / p);
  }
};

struct KernelTable {
  const char* name;
  /// acc[i] += a * x[i] with no reduction; the caller bounds how many
  /// products pile up (see Modulus::max_delayed).
  void (*mul_acc)(std::uint64_t* acc, const Elem* x, Elem a, std::size_t n);
  /// out[i] = acc[i] mod p.
  void (*reduce)(const std::uint64_t* acc, Elem* out, std::size_t n, const Modulus& m);
  /// y[i] = y[i] + a * x[i] mod p.
  void (*axpy)(Elem* y, const Elem* x, Elem a, std::size_t n, const Modulus& m);
  /// y[i] = a * y[i] mod p.
  void (*scale)(Elem* y, Elem a, std::size_t n, const Modulus& m);
  void (*add)(Elem* y, const Elem* x, std::size_t n, const Modulus& m);
  void (*sub)(Elem* y, const Elem* x, std::size_t n, const Modulus& m);
  /// Four-row register tile of a matrix product, no reduction:
  /// acc[r * ldc + c] += sum_k a[4 * k + r] * B(k, c) for r < 4, c < n,
  /// where B(k, c) = b[k][(c / 8) * bs + c % 8].
  void (*mul_acc4)(std::uint64_t* acc, std::size_t ldc, const Elem* a, const Elem* const* b,
                   std::size_t bs, std::size_t depth, std::size_t n);
};

const KernelTable& scalar_kernels();

/// nullptr when the build or the running CPU lacks AVX2.
const KernelTable* avx2_kernels();

/// The table used by linalg. Defaults to the widest supported variant; the
/// environment variable POSSO_KERNELS=scalar pins the reference path.
const KernelTable& active_kernels();

/// Overrides the active table ("scalar", "avx2" or "auto"). Returns false if
/// the requested variant is unavailable.
bool select_kernels(std::string_view name);

}  // namespace posso::kernels
