#include "lucaskit/modarith.hpp"

#include <algorithm>
#include <string>

namespace lucaskit {

namespace detail {

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) r = mul_mod(r, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return r;
}

std::uint64_t inv_mod(std::uint64_t x, std::uint64_t m) {
  // iterative extended Euclid; m < 2^63 keeps the signed arithmetic safe
  std::int64_t a = static_cast<std::int64_t>(x % m), b = static_cast<std::int64_t>(m);
  std::int64_t u = 1, v = 0;
  while (a != 0) {
    std::int64_t q = b / a;
    b -= q * a;
    std::swap(a, b);
    v -= q * u;
    std::swap(u, v);
  }
  if (b != 1) throw std::domain_error("non-invertible");
  if (v < 0) v += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(v);
}

std::uint64_t binom_additive(std::uint64_t n, std::uint64_t k, std::uint64_t m) {
  if (k > n) return 0;
  const std::uint64_t cols = std::min(k, n - k);
  std::vector<std::uint64_t> row(cols + 1, 0);
  row[0] = 1 % m;
  for (std::uint64_t i = 1; i <= n; ++i)
    for (std::uint64_t j = std::min(i, cols); j >= 1; --j)
      row[j] = add_mod(row[j], row[j - 1], m);
  return row[cols];
}

}  // namespace detail

namespace {

constexpr std::uint64_t kMillerRabinBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

// carries of k + (n-k) in base p, no validation
std::uint64_t carries_unchecked(std::uint64_t n, std::uint64_t k, std::uint64_t p) {
  std::uint64_t count = 0, carry = 0;
  std::uint64_t x = k, y = n - k;
  while (x || y || carry) {
    std::uint64_t digit = x % p + y % p + carry;
    carry = digit >= p ? 1 : 0;
    count += carry;
    x /= p;
    y /= p;
  }
  return count;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : kMillerRabinBases) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  // this witness set is deterministic for all n < 2^64
  for (std::uint64_t a : kMillerRabinBases) {
    std::uint64_t x = detail::pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < r; ++i) {
      x = detail::mul_mod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

Modulus::Modulus(std::uint64_t p, int alpha) : p_(p), alpha_(alpha) {
  if (alpha < 1 || alpha > 3)
    throw std::invalid_argument("Modulus: alpha must be 1, 2, or 3");
  if (!is_prime(p)) throw std::invalid_argument("Modulus: p is not prime");
  constexpr std::uint64_t kMax = (std::uint64_t{1} << 63) - 1;  // m*m must fit 128 bits
  m_ = 1;
  for (int i = 0; i < alpha; ++i) {
    if (m_ > kMax / p) throw std::invalid_argument("Modulus: p^alpha overflows the residue range");
    m_ *= p;
  }
}

std::uint64_t Residue::check(const Residue& o) const {
  if (!(m_ == o.m_)) throw std::invalid_argument("Residue: modulus mismatch");
  return o.v_;
}

Residue mod_inv(std::uint64_t x, const Modulus& m) {
  return Residue(detail::inv_mod(x % m.value(), m.value()), m);
}

Residue mod_pow(std::uint64_t base, std::uint64_t exp, const Modulus& m) {
  return Residue(detail::pow_mod(base, exp, m.value()), m);
}

std::vector<std::uint64_t> batch_inverses(std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("batch_inverses: p is not prime");
  std::vector<std::uint64_t> inv(p - 1);
  inv[0] = 1;
  for (std::uint64_t i = 2; i < p; ++i)
    inv[i - 1] = p - detail::mul_mod(p / i, inv[p % i - 1], p);
  return inv;
}

Residue binom_pascal(std::uint64_t n, std::uint64_t k, const Modulus& m,
                     std::uint64_t oracle_limit) {
  if (n > oracle_limit)
    throw oracle_limit_error("oracle limit exceeded: n = " + std::to_string(n) + " > " +
                             std::to_string(oracle_limit));
  return Residue(detail::binom_additive(n, k, m.value()), m);
}

std::uint64_t carry_count(std::uint64_t n, std::uint64_t k, std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("carry_count: p is not prime");
  if (k > n) throw std::invalid_argument("carry_count: k exceeds n");
  return carries_unchecked(n, k, p);
}

Residue binom_factored(std::uint64_t n, std::uint64_t k, const Modulus& m) {
  if (k > n) return Residue(0, m);
  const std::uint64_t p = m.prime();
  const std::uint64_t q = m.value();
  const int alpha = m.alpha();

  const std::uint64_t v = carries_unchecked(n, k, p);
  if (v >= static_cast<std::uint64_t>(alpha)) return Residue(0, m);

  // Product of the units in a full block of length q is -1 mod q, except +1
  // for p = 2, alpha >= 3 where the unit group is no longer cyclic.
  const std::uint64_t block_sign = (p == 2 && alpha >= 3) ? 1 : q - 1;

  // t! with all factors of p removed, reduced mod q.
  auto stripped_factorial = [&](std::uint64_t t) {
    std::uint64_t res = 1;
    while (t > 0) {
      if (((t / q) & 1) && block_sign != 1) res = q - res;
      const std::uint64_t rem = t % q;
      for (std::uint64_t j = 1; j <= rem; ++j)
        if (j % p != 0) res = detail::mul_mod(res, j, q);
      t /= p;
    }
    return res;
  };

  const std::uint64_t num = stripped_factorial(n);
  const std::uint64_t den =
      detail::mul_mod(stripped_factorial(k), stripped_factorial(n - k), q);
  std::uint64_t unit = detail::mul_mod(num, detail::inv_mod(den, q), q);
  for (std::uint64_t i = 0; i < v; ++i) unit = detail::mul_mod(unit, p, q);
  return Residue(unit, m);
}

}  // namespace lucaskit
