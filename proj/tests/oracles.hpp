#pragma once

// Brute-force reference implementations. Deliberately naive and written
// against machine integers only, so they share no code with the library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

namespace oracle {

using i64 = long long;

inline i64 md(i64 a, i64 m) { return ((a % m) + m) % m; }

inline bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<i64> primes_below(i64 n) {
  std::vector<i64> out;
  for (i64 p = 2; p < n; ++p)
    if (is_prime(p)) out.push_back(p);
  return out;
}

// Legendre symbol by listing the squares.
inline int legendre(i64 a, i64 p) {
  a = md(a, p);
  if (a == 0) return 0;
  for (i64 x = 1; x < p; ++x)
    if (x * x % p == a) return 1;
  return -1;
}

// Jacobi symbol as a product of Legendre symbols over the factorization of n.
inline int jacobi(i64 a, i64 n) {
  int r = 1;
  for (i64 q = 3; n > 1; q += 2) {
    while (n % q == 0) {
      r *= legendre(a, q);
      n /= q;
    }
  }
  return r;
}

inline std::vector<i64> sqrt_all(i64 d, i64 p) {
  std::vector<i64> out;
  for (i64 x = 0; x < p; ++x)
    if (md(x * x - d, p) == 0) out.push_back(x);
  return out;
}

// Points on y^2 = x^3 + A x + B over F_p, counted pair by pair, plus infinity.
inline i64 count_points(i64 A, i64 B, i64 p) {
  std::vector<i64> sq(p, 0);
  for (i64 y = 0; y < p; ++y) sq[y * y % p]++;
  i64 n = 1;
  for (i64 x = 0; x < p; ++x) n += sq[md(x * x % p * x + A * x + B, p)];
  return n;
}

// Some (x, y) with |x|, |y| <= box and a x^2 + b x y + c y^2 = m.
inline std::optional<std::pair<i64, i64>> find_rep(i64 a, i64 b, i64 c, i64 m, i64 box) {
  for (i64 x = -box; x <= box; ++x)
    for (i64 y = -box; y <= box; ++y)
      if (a * x * x + b * x * y + c * y * y == m) return std::make_pair(x, y);
  return std::nullopt;
}

inline i64 gcd(i64 a, i64 b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b) {
    i64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Reduced primitive positive definite forms of discriminant delta < 0,
// straight from |b| <= a <= c with the boundary conventions.
inline std::vector<std::tuple<i64, i64, i64>> reduced_forms(i64 delta) {
  std::vector<std::tuple<i64, i64, i64>> out;
  for (i64 a = 1; 3 * a * a <= -delta; ++a)
    for (i64 b = -a + 1; b <= a; ++b) {
      i64 num = b * b - delta;
      if (num % (4 * a)) continue;
      i64 c = num / (4 * a);
      if (c < a) continue;
      if (c == a && b < 0) continue;
      if (gcd(gcd(a, b), c) != 1) continue;
      out.emplace_back(a, b, c);
    }
  return out;
}

// Proper equivalence class index of a positive definite form, by naive
// reduction over int64.
inline std::tuple<i64, i64, i64> reduce_definite(i64 a, i64 b, i64 c) {
  for (;;) {
    if (b > a || b <= -a) {
      // b -> b - 2 a k into (-a, a]
      i64 k = (b + a - 1) / (2 * a);
      if (b + a - 1 < 0) k = -((-(b + a - 1) + 2 * a - 1) / (2 * a));
      i64 nb = b - 2 * a * k;
      c = c - b * k + a * k * k;
      b = nb;
      continue;
    }
    if (a > c || (a == c && b < 0)) {
      std::swap(a, c);
      b = -b;
      continue;
    }
    return {a, b, c};
  }
}

// Integer roots of sum c_i x^i by scanning [-B, B].
inline std::vector<i64> int_roots(const std::vector<i64>& c, i64 B) {
  std::vector<i64> out;
  for (i64 x = -B; x <= B; ++x) {
    __int128 v = 0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
    if (v == 0) out.push_back(x);
  }
  return out;
}

// Least q > 0 with p^2 - D q^2 = +-1.
inline std::tuple<i64, i64, int> pell(i64 D, i64 qmax = 100000000) {
  for (i64 q = 1; q <= qmax; ++q) {
    for (int s : {-1, 1}) {
      __int128 t = static_cast<__int128>(D) * q * q + s;
      i64 p = static_cast<i64>(std::llround(std::sqrt(static_cast<long double>(t))));
      for (i64 pp = p - 1; pp <= p + 1; ++pp)
        if (pp > 0 && static_cast<__int128>(pp) * pp == t) return {pp, q, s};
    }
  }
  return {0, 0, 0};
}

}  // namespace oracle
