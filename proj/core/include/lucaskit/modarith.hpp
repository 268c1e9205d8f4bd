#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace lucaskit {

/// Default cap on the row index accepted by the additive Pascal oracle.
inline constexpr std::uint64_t kDefaultOracleLimit = 20000;

/// Raised when a computation would drive the exact oracle past its row cap.
class oracle_limit_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Deterministic Miller-Rabin, exact for the full 64-bit range.
bool is_prime(std::uint64_t n);

/// A prime-power modulus m = p^alpha with alpha in {1, 2, 3}.
///
/// Construction rejects composite p, exponents outside {1, 2, 3}, and any m
/// for which a product of two reduced residues would not fit the 128-bit
/// intermediate, i.e. it requires m < 2^63.
class Modulus {
public:
  Modulus(std::uint64_t p, int alpha);

  std::uint64_t prime() const { return p_; }
  int alpha() const { return alpha_; }
  std::uint64_t value() const { return m_; }

  friend bool operator==(const Modulus& a, const Modulus& b) {
    return a.p_ == b.p_ && a.alpha_ == b.alpha_;
  }

private:
  std::uint64_t p_;
  int alpha_;
  std::uint64_t m_;
};

namespace detail {

inline std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  std::uint64_t s = a + b;  // no wrap: a, b < m < 2^63
  return s >= m ? s - m : s;
}

inline std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return a >= b ? a - b : a + m - b;
}

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Inverse mod m by extended Euclid; throws std::domain_error("non-invertible").
std::uint64_t inv_mod(std::uint64_t x, std::uint64_t m);

/// Uncapped additive Pascal recurrence; exact for any modulus m >= 2.
std::uint64_t binom_additive(std::uint64_t n, std::uint64_t k, std::uint64_t m);

}  // namespace detail

/// An integer canonically reduced modulo a prime power.  Arithmetic between
/// residues of different moduli throws std::invalid_argument.
class Residue {
public:
  Residue(std::uint64_t value, const Modulus& m) : m_(m), v_(value % m.value()) {}

  std::uint64_t value() const { return v_; }
  const Modulus& modulus() const { return m_; }

  Residue operator+(const Residue& o) const {
    return with(detail::add_mod(v_, check(o), m_.value()));
  }
  Residue operator-(const Residue& o) const {
    return with(detail::sub_mod(v_, check(o), m_.value()));
  }
  Residue operator*(const Residue& o) const {
    return with(detail::mul_mod(v_, check(o), m_.value()));
  }

  Residue pow(std::uint64_t e) const { return with(detail::pow_mod(v_, e, m_.value())); }
  Residue inverse() const { return with(detail::inv_mod(v_, m_.value())); }

  friend bool operator==(const Residue& a, const Residue& b) {
    return a.m_ == b.m_ && a.v_ == b.v_;
  }

private:
  Residue with(std::uint64_t v) const { return Residue(v, m_); }
  std::uint64_t check(const Residue& o) const;

  Modulus m_;
  std::uint64_t v_;
};

Residue mod_inv(std::uint64_t x, const Modulus& m);
Residue mod_pow(std::uint64_t base, std::uint64_t exp, const Modulus& m);

/// Inverses of 1..p-1 modulo p in O(p); entry i-1 holds the inverse of i.
std::vector<std::uint64_t> batch_inverses(std::uint64_t p);

/// Exact C(n, k) mod m by the additive Pascal recurrence, no divisions.
/// This is the independent oracle: correct for any prime-power modulus,
/// O(n * min(k, n-k)) time.  Rows above oracle_limit are rejected.
Residue binom_pascal(std::uint64_t n, std::uint64_t k, const Modulus& m,
                     std::uint64_t oracle_limit = kDefaultOracleLimit);

/// Carries when adding k and n-k in base p; equals v_p(C(n, k)) by Kummer's
/// theorem.  Requires k <= n.
std::uint64_t carry_count(std::uint64_t n, std::uint64_t k, std::uint64_t p);

/// Exact C(n, k) mod p^alpha via generalized factorials stripped of their
/// p-part, with the generalized Wilson sign per block of units.  Scalable in
/// n (no row cap); returns 0 when k > n.
Residue binom_factored(std::uint64_t n, std::uint64_t k, const Modulus& m);

}  // namespace lucaskit
