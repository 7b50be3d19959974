#include "trisum/arith.hpp"
#include "trisum/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>

namespace trisum::arith {

i64 gcd(i64 a, i64 b) { return std::gcd(a, b); }

i64 mod(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

ExtGcd ext_gcd(i64 a, i64 b) {
    i64 old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        i64 qt = old_r / r;
        i64 tmp = old_r - qt * r; old_r = r; r = tmp;
        tmp = old_s - qt * s; old_s = s; s = tmp;
        tmp = old_t - qt * t; old_t = t; t = tmp;
    }
    if (old_r < 0) return {-old_r, -old_s, -old_t};
    return {old_r, old_s, old_t};
}

i64 mod_inverse(i64 a, i64 m) {
    if (m <= 0) throw DomainError("mod_inverse: modulus must be positive");
    if (m == 1) return 0;
    auto [g, x, y] = ext_gcd(mod(a, m), m);
    (void)y;
    if (g != 1) throw DomainError("mod_inverse: argument not invertible");
    return mod(x, m);
}

u64 mul_mod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

u64 pow_mod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mul_mod(r, a, m);
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    return r;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    static const u64 small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 p : small) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (u64 a : small) {
        u64 x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

namespace {

u64 udiff(u64 a, u64 b) { return a > b ? a - b : b - a; }

u64 pollard_brent(u64 n) {
    if (n % 2 == 0) return 2;
    for (u64 c = 1;; ++c) {
        u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
        const u64 m = 128;
        u64 r = 1;
        auto f = [&](u64 v) { return (mul_mod(v, v, n) + c) % n; };
        do {
            x = y;
            for (u64 i = 0; i < r; ++i) y = f(y);
            u64 k = 0;
            do {
                ys = y;
                for (u64 i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mul_mod(q, udiff(x, y), n);
                }
                g = std::gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r <<= 1;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(udiff(x, ys), n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void split(u64 n, std::map<u64, int>& acc) {
    if (n == 1) return;
    if (is_prime(n)) { ++acc[n]; return; }
    u64 d = pollard_brent(n);
    split(d, acc);
    split(n / d, acc);
}

} // namespace

Factorization factorize(u64 n) {
    if (n == 0) throw DomainError("factorize: n must be positive");
    std::map<u64, int> acc;
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
        while (n % p == 0) { ++acc[p]; n /= p; }
    }
    for (u64 p = 17; p < 1000 && p * p <= n; p += 2) {
        while (n % p == 0) { ++acc[p]; n /= p; }
    }
    split(n, acc);
    Factorization out;
    for (auto [p, e] : acc) out.push_back({p, e});
    return out;
}

std::vector<u64> divisors(u64 n) {
    std::vector<u64> ds{1};
    for (auto [p, e] : factorize(n)) {
        std::size_t len = ds.size();
        u64 pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < len; ++i) ds.push_back(ds[i] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

u64 num_divisors(u64 n) {
    u64 r = 1;
    for (auto [p, e] : factorize(n)) r *= static_cast<u64>(e + 1);
    return r;
}

int mobius(u64 n) {
    int r = 1;
    for (auto [p, e] : factorize(n)) {
        if (e > 1) return 0;
        r = -r;
    }
    return r;
}

u64 euler_phi(u64 n) {
    u64 r = n;
    for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
    return r;
}

u64 d3_prime_power(int e) {
    return static_cast<u64>(e + 1) * static_cast<u64>(e + 2) / 2;
}

u64 d3_pointwise(u64 n) {
    if (n == 0) throw DomainError("d3_pointwise: n must be positive");
    u64 r = 1;
    for (auto [p, e] : factorize(n)) r *= d3_prime_power(e);
    return r;
}

u64 sigma00(u64 i, u64 j) {
    if (i == 0 || j == 0) throw DomainError("sigma00: arguments must be positive");
    u64 count = 0;
    for (u64 d1 : divisors(j)) {
        for (u64 d2 : divisors(j / d1)) {
            if (std::gcd(d2, i) == 1) ++count;
        }
    }
    return count;
}

u64 sigma00_fast(u64 i, u64 j) {
    if (i == 0 || j == 0) throw DomainError("sigma00: arguments must be positive");
    u64 r = 1;
    for (auto [p, e] : factorize(j)) {
        r *= (i % p == 0) ? static_cast<u64>(e + 1) : d3_prime_power(e);
    }
    return r;
}

int jacobi(i64 a, i64 q) {
    if (q <= 0 || q % 2 == 0) throw DomainError("jacobi: modulus must be odd and positive");
    a = mod(a, q);
    int t = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            i64 r = q % 8;
            if (r == 3 || r == 5) t = -t;
        }
        std::swap(a, q);
        if (a % 4 == 3 && q % 4 == 3) t = -t;
        a %= q;
    }
    return q == 1 ? t : 0;
}

JacobiEps jacobi_and_eps(i64 a, i64 q) {
    int j = jacobi(a, q);
    return {j, q % 4 == 1 ? 0 : 1};
}

} // namespace trisum::arith
