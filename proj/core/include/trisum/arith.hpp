#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace trisum::arith {

using u64 = std::uint64_t;
using i64 = std::int64_t;

struct PrimePower {
    u64 p;
    int e;
    bool operator==(const PrimePower&) const = default;
};

using Factorization = std::vector<PrimePower>;

i64 gcd(i64 a, i64 b);
i64 mod(i64 a, i64 m);

// Returns (g, x, y) with a*x + b*y = g.
struct ExtGcd { i64 g, x, y; };
ExtGcd ext_gcd(i64 a, i64 b);

// Throws DomainError when gcd(a, m) != 1.
i64 mod_inverse(i64 a, i64 m);

u64 mul_mod(u64 a, u64 b, u64 m);
u64 pow_mod(u64 a, u64 e, u64 m);

bool is_prime(u64 n);

// Sorted by prime. Deterministic Miller-Rabin plus Pollard-Brent rho.
Factorization factorize(u64 n);

std::vector<u64> divisors(u64 n);
u64 num_divisors(u64 n);
int mobius(u64 n);
u64 euler_phi(u64 n);

u64 d3_prime_power(int e);
u64 d3_pointwise(u64 n);

// Direct double loop over i1 | i and j1 | j with i*j1 = i1*j.
u64 sigma00(u64 i, u64 j);
// Multiplicative closed form.
u64 sigma00_fast(u64 i, u64 j);

// Jacobi symbol (a/q) for odd q >= 1.
int jacobi(i64 a, i64 q);

// Value of eps_q: 1 when q = 1 mod 4, i otherwise. Encoded as exponent k with eps = i^k.
struct JacobiEps {
    int jacobi;
    int eps_power;
};
JacobiEps jacobi_and_eps(i64 a, i64 q);

} // namespace trisum::arith
