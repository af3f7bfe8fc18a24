#include <doctest.h>

#include "posso/error.hpp"
#include "posso/field.hpp"
#include "posso/kernels.hpp"

using namespace posso;

TEST_CASE("addition wraps around the modulus") {
  const PrimeField f7(7);
  CHECK(f7.add(3, 5) == 1);
  const PrimeField f(65521);
  CHECK(f.add(65520, 1) == 0);
  CHECK(f.sub(0, 1) == 65520);
  CHECK(f.neg(0) == 0);
}

TEST_CASE("inverses") {
  const PrimeField f(65521);
  const Elem i2 = f.inv(2);
  CHECK(i2 == 32761);
  CHECK((2ull * i2) % 65521 == 1);
  const PrimeField f7(7);
  CHECK(f7.inv(3) == 5);
  CHECK((3 * 5) % 7 == 1);
  CHECK_THROWS_AS(f7.inv(0), Error);
  try {
    f7.inv(0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroInverse);
  }
}

TEST_CASE("every nonzero element of a small field has an inverse") {
  for (std::uint32_t p : {3u, 5u, 7u, 101u, 257u}) {
    const PrimeField f(p);
    for (Elem a = 1; a < p; ++a) CHECK(f.mul(a, f.inv(a)) == 1);
  }
}

TEST_CASE("non-prime moduli are rejected") {
  for (std::uint32_t p : {0u, 1u, 2u, 8u, 9u, 65535u}) {
    try {
      PrimeField f(p);
      FAIL("accepted modulus " << p);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NonPrimeModulus);
    }
  }
}

TEST_CASE("pow agrees with repeated multiplication and Fermat") {
  const PrimeField f(101);
  for (Elem a = 0; a < 101; ++a) {
    Elem acc = 1;
    for (int e = 0; e < 12; ++e) {
      CHECK(f.pow(a, e) == acc);
      acc = f.mul(acc, a);
    }
    if (a != 0) CHECK(f.pow(a, 100) == 1);
  }
}

TEST_CASE("from_int and to_signed") {
  const PrimeField f(7);
  CHECK(f.from_int(-1) == 6);
  CHECK(f.from_int(-15) == 6);
  CHECK(f.from_int(15) == 1);
  CHECK(f.to_signed(6) == -1);
  CHECK(f.to_signed(3) == 3);
  CHECK(f.to_signed(4) == -3);
}

TEST_CASE("Barrett reduction matches the remainder operator") {
  Rng rng(7);
  for (std::uint32_t p : {3u, 7u, 65521u, 2147483647u}) {
    const kernels::Modulus m(p);
    for (int t = 0; t < 20000; ++t) {
      const std::uint64_t v = rng();
      CHECK(m.reduce(v) == v % p);
    }
    CHECK(m.reduce(~0ull) == (~0ull) % p);
    const unsigned __int128 worst =
        static_cast<unsigned __int128>(p - 1) + static_cast<unsigned __int128>(m.max_delayed) * (p - 1) * (p - 1);
    CHECK(worst <= static_cast<unsigned __int128>(~0ull));
  }
}

TEST_CASE("random elements stay in range") {
  const PrimeField f(7);
  Rng rng(1);
  for (int t = 0; t < 1000; ++t) {
    CHECK(f.random_element(rng) < 7);
    const Elem z = f.random_nonzero(rng);
    CHECK(z >= 1);
    CHECK(z < 7);
  }
}
