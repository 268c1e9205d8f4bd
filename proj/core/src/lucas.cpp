#include "lucaskit/lucas.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "lucaskit/harmonic.hpp"

namespace lucaskit {

namespace {

using detail::add_mod;
using detail::binom_additive;
using detail::inv_mod;
using detail::mul_mod;
using detail::sub_mod;

// (-1)^k as a canonical residue mod m
std::uint64_t sign_pow(std::uint64_t k, std::uint64_t m) { return (k & 1) ? m - 1 : 1; }

void check_digits(std::uint64_t p, DigitPair q) {
  if (q.r >= p || q.s >= p) throw std::invalid_argument("digit out of range for base p");
}

void require_triangle(std::uint64_t p, std::uint64_t r, std::uint64_t s) {
  if (r >= p || s >= p) throw std::invalid_argument("digit out of range for base p");
  if (s > r) throw std::domain_error("outside triangle: s > r");
}

// Pascal's triangle rows 0..n_max reduced mod m.
std::vector<std::vector<std::uint64_t>> pascal_rows(std::uint64_t n_max, std::uint64_t m) {
  std::vector<std::vector<std::uint64_t>> rows(n_max + 1);
  rows[0] = {1 % m};
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    rows[n].resize(n + 1);
    rows[n][0] = rows[n][n] = 1 % m;
    for (std::uint64_t j = 1; j < n; ++j)
      rows[n][j] = add_mod(rows[n - 1][j - 1], rows[n - 1][j], m);
  }
  return rows;
}

// 1 + p * ((hi - lo) mod p) as a residue mod p^2
std::uint64_t one_plus_p_diff(std::uint64_t p, std::uint64_t hi, std::uint64_t lo) {
  return 1 + p * sub_mod(hi, lo, p);
}

std::uint64_t checked_scan_rows(std::uint64_t p, std::uint64_t a_max,
                                std::uint64_t oracle_limit) {
  if (p - 1 > oracle_limit || a_max > (oracle_limit - (p - 1)) / p)
    throw oracle_limit_error("oracle limit exceeded: p*a_max + p - 1 > " +
                             std::to_string(oracle_limit));
  return p * a_max + p - 1;
}

// Streams Pascal rows 0..p*a_max + p-1 mod p^alpha and flags every pair
// (r, s), s <= r, whose Lucas congruence fails for some a <= a_max,
// b <= b_max.  Optionally verifies the zero region s > r at (a, b) = (1, 0).
std::vector<DigitPair> lucas_pair_scan(const Modulus& mod, std::uint64_t a_max,
                                       std::uint64_t b_max, std::uint64_t oracle_limit,
                                       bool verify_zero_region) {
  const std::uint64_t p = mod.prime();
  const std::uint64_t q = mod.value();
  const std::uint64_t n_max = checked_scan_rows(p, a_max, oracle_limit);

  const auto outer = pascal_rows(a_max, q);  // C(a, b) mod q
  std::vector<std::vector<std::uint64_t>> digit_rows;  // C(r, s) mod q for r < p
  digit_rows.reserve(p);
  std::vector<std::uint8_t> ok(p * p, 1);

  std::vector<std::uint64_t> row;
  row.reserve(n_max + 1);
  row.push_back(1 % q);
  for (std::uint64_t n = 0; n <= n_max; ++n) {
    if (n > 0) {
      row.push_back(0);
      for (std::uint64_t j = n; j >= 1; --j) row[j] = add_mod(row[j], row[j - 1], q);
    }
    if (n < p) digit_rows.push_back(row);

    const std::uint64_t a = n / p;
    const std::uint64_t r = n % p;
    for (std::uint64_t b = 0; b <= b_max; ++b) {
      const std::uint64_t ab = b <= a ? outer[a][b] : 0;
      const std::uint64_t base = p * b;
      for (std::uint64_t s = 0; s < p; ++s) {
        const std::uint64_t k = base + s;
        const std::uint64_t lhs = k <= n ? row[k] : 0;
        if (s <= r) {
          if (lhs != mul_mod(ab, digit_rows[r][s], q)) ok[r * p + s] = 0;
        } else if (verify_zero_region && a == 1 && b == 0) {
          // C(p + r, s) must be divisible by p exactly once
          if (lhs % p != 0 || lhs == 0)
            throw std::logic_error("zero-region check failed at (r, s) = (" +
                                   std::to_string(r) + ", " + std::to_string(s) + ")");
        }
      }
    }
  }

  std::vector<DigitPair> pairs;
  for (std::uint64_t r = 0; r < p; ++r)
    for (std::uint64_t s = 0; s <= r; ++s)
      if (ok[r * p + s]) pairs.push_back({r, s});
  return pairs;
}

}  // namespace

std::string to_string(DsetMethod method) {
  switch (method) {
    case DsetMethod::harmonic: return "harmonic";
    case DsetMethod::rotation: return "rotation";
    case DsetMethod::bruteforce: return "bruteforce";
  }
  return "unknown";
}

DsetMethod dset_method_from_string(const std::string& name) {
  if (name == "harmonic") return DsetMethod::harmonic;
  if (name == "rotation") return DsetMethod::rotation;
  if (name == "bruteforce") return DsetMethod::bruteforce;
  throw std::invalid_argument("unknown D(p) method: " + name);
}

bool DSet::contains(const DigitPair& q) const {
  return std::binary_search(pairs.begin(), pairs.end(), q);
}

DigitPair reflect(std::uint64_t p, DigitPair q) {
  check_digits(p, q);
  if (q.s > q.r) throw std::domain_error("outside triangle: s > r");
  return {q.r, q.r - q.s};
}

DigitPair rotate(std::uint64_t p, DigitPair q) {
  check_digits(p, q);
  if (q.s > q.r) throw std::domain_error("outside triangle: s > r");
  return {p - 1 - q.s, q.r - q.s};
}

std::vector<DigitPair> orbit(std::uint64_t p, DigitPair q) {
  check_digits(p, q);
  if (q.s > q.r) throw std::domain_error("outside triangle: s > r");
  std::set<DigitPair> seen{q};
  std::vector<DigitPair> pending{q};
  while (!pending.empty()) {
    DigitPair t = pending.back();
    pending.pop_back();
    for (DigitPair u : {rotate(p, t), reflect(p, t)})
      if (seen.insert(u).second) pending.push_back(u);
  }
  return {seen.begin(), seen.end()};
}

DSet dset_harmonic(std::uint64_t p) {
  const auto table = harmonic_table(p);
  // bucket digit indices by harmonic value; only same-bucket pairs can qualify
  std::vector<std::vector<std::uint64_t>> buckets(p);
  for (std::uint64_t n = 0; n < p; ++n) buckets[table->values[n]].push_back(n);

  DSet out{p, {}, DsetMethod::harmonic};
  for (const auto& bucket : buckets) {
    for (std::size_t i = 0; i < bucket.size(); ++i) {
      for (std::size_t j = i; j < bucket.size(); ++j) {
        const std::uint64_t s = bucket[i];
        const std::uint64_t r = bucket[j];
        if (table->values[r - s] == table->values[r]) out.pairs.push_back({r, s});
      }
    }
  }
  std::sort(out.pairs.begin(), out.pairs.end());
  return out;
}

DSet dset_rotation(std::uint64_t p) {
  const Modulus mod(p, 2);
  const std::uint64_t q = mod.value();
  const auto rows = pascal_rows(p - 1, q);

  DSet out{p, {}, DsetMethod::rotation};
  for (std::uint64_t r = 0; r < p; ++r) {
    for (std::uint64_t s = 0; s <= r; ++s) {
      const std::uint64_t lhs = rows[r][s];
      const std::uint64_t first = mul_mod(sign_pow(r - s, q), rows[p - 1 - s][r - s], q);
      if (lhs != first) continue;
      const std::uint64_t second = mul_mod(sign_pow(s, q), rows[p - 1 - r + s][s], q);
      if (lhs == second) out.pairs.push_back({r, s});
    }
  }
  return out;
}

DSet dset_bruteforce(std::uint64_t p, std::uint64_t a_max, std::uint64_t b_max,
                     std::uint64_t oracle_limit) {
  const Modulus mod(p, 2);
  DSet out{p, lucas_pair_scan(mod, a_max, b_max, oracle_limit, true),
           DsetMethod::bruteforce};
  return out;
}

Residue general_congruence_rhs(std::uint64_t p, std::uint64_t a, std::uint64_t b,
                               std::uint64_t r, std::uint64_t s) {
  const Modulus mod(p, 2);
  require_triangle(p, r, s);
  const std::uint64_t q = mod.value();
  const auto table = harmonic_table(p);

  const std::uint64_t cab = binom_factored(a, b, mod).value();
  const std::uint64_t crs = binom_additive(r, s, q);
  // a and b enter the order-p correction reduced mod p
  const std::uint64_t d1 = sub_mod(table->values[r], table->values[r - s], p);
  const std::uint64_t d2 = sub_mod(table->values[r - s], table->values[s], p);
  const std::uint64_t corr =
      add_mod(mul_mod(a % p, d1, p), mul_mod(b % p, d2, p), p);
  const std::uint64_t factor = 1 + p * corr;  // < p^2
  return Residue(mul_mod(mul_mod(cab, crs, q), factor, q), mod);
}

bool check_general_congruence(std::uint64_t p, std::uint64_t a, std::uint64_t b,
                              std::uint64_t r, std::uint64_t s,
                              std::uint64_t oracle_limit) {
  const Residue rhs = general_congruence_rhs(p, a, b, r, s);
  if (a > oracle_limit / p)
    throw oracle_limit_error("oracle limit exceeded: p*a + r > " +
                             std::to_string(oracle_limit));
  std::uint64_t lhs = 0;
  if (b <= a)  // otherwise the binomial vanishes
    lhs = binom_pascal(p * a + r, p * b + s, rhs.modulus(), oracle_limit).value();
  return lhs == rhs.value();
}

bool check_rotation_identity(std::uint64_t p, std::uint64_t r, std::uint64_t s) {
  const Modulus mod(p, 2);
  require_triangle(p, r, s);
  const std::uint64_t q = mod.value();
  const auto table = harmonic_table(p);

  const std::uint64_t lhs = binom_additive(r, s, q);
  const std::uint64_t factor = one_plus_p_diff(p, table->values[r], table->values[s]);
  const std::uint64_t rhs = mul_mod(
      mul_mod(sign_pow(r - s, q), binom_additive(p - 1 - s, r - s, q), q), factor, q);
  return lhs == rhs;
}

bool check_rotation_mod_p(std::uint64_t p, std::uint64_t r, std::uint64_t s) {
  if (!is_prime(p)) throw std::invalid_argument("check_rotation_mod_p: p is not prime");
  require_triangle(p, r, s);
  const std::uint64_t lhs = binom_additive(r, s, p);
  const std::uint64_t rhs =
      mul_mod(sign_pow(r - s, p), binom_additive(p - 1 - s, r - s, p), p);
  return lhs == rhs;
}

bool is_wieferich(std::uint64_t p) {
  if (p == 2) throw std::domain_error("is_wieferich: undefined for p = 2");
  const Modulus mod(p, 2);
  return mod_pow(2, p - 1, mod).value() == 1;
}

bool wieferich_via_harmonic(std::uint64_t p) {
  if (p == 2) throw std::domain_error("wieferich_via_harmonic: undefined for p = 2");
  if (!is_prime(p)) throw std::invalid_argument("wieferich_via_harmonic: p is not prime");
  return harmonic(p, (p - 1) / 2) == 0;
}

DigitPair center_pair(std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("center_pair: p is not prime");
  if (p % 3 != 1) throw std::domain_error("no integer center: p != 1 mod 3");
  return {2 * (p - 1) / 3, (p - 1) / 3};
}

CornacchiaPair cornacchia_4p(std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("cornacchia_4p: p is not prime");
  if (p % 3 != 1) throw std::domain_error("no representation: p != 1 mod 3");
  const std::uint64_t target = 4 * p;
  for (std::uint64_t b = 1; 27 * b * b <= target; ++b) {
    const std::uint64_t rem = target - 27 * b * b;
    const auto a = static_cast<std::uint64_t>(std::llround(std::sqrt(static_cast<double>(rem))));
    for (std::uint64_t c : {a > 0 ? a - 1 : 0, a, a + 1}) {
      if (c * c != rem || c == 0) continue;
      const auto signed_a = static_cast<std::int64_t>(c);
      return {c % 3 == 1 ? signed_a : -signed_a, b};
    }
  }
  throw std::logic_error("cornacchia_4p: no split found for p = " + std::to_string(p));
}

std::vector<DigitPair> dset_mod_p3(std::uint64_t p, std::uint64_t a_max, std::uint64_t b_max,
                                   std::uint64_t oracle_limit) {
  if (p < 5) throw std::invalid_argument("dset_mod_p3: requires p >= 5");
  const Modulus mod(p, 3);
  return lucas_pair_scan(mod, a_max, b_max, oracle_limit, false);
}

bool ClassicalReport::all_pass() const {
  for (const auto& field : {babbage, wolstenholme, glaisher, jacobsthal, morley})
    if (field.has_value() && !*field) return false;
  return true;
}

ClassicalReport classical_report(std::uint64_t p, std::uint64_t oracle_limit) {
  if (!is_prime(p)) throw std::invalid_argument("classical_report: p is not prime");
  constexpr std::uint64_t kABound = 5;
  if (p > oracle_limit / kABound)
    throw oracle_limit_error("oracle limit exceeded: classical checks need rows up to 5p");

  ClassicalReport report;
  report.p = p;

  if (p >= 3) {
    const Modulus m2(p, 2);
    report.babbage = binom_pascal(2 * p - 1, p - 1, m2, oracle_limit).value() == 1;
  }
  {
    // Jacobsthal-Ljunggren: mod p^3 for p >= 5, mod p^2 for p in {2, 3}
    const Modulus m(p, p >= 5 ? 3 : 2);
    bool ok = true;
    for (std::uint64_t a = 0; a <= kABound && ok; ++a)
      for (std::uint64_t b = 0; b <= kABound && ok; ++b)
        ok = binom_pascal(p * a, p * b, m, oracle_limit).value() ==
             detail::binom_additive(a, b, m.value());
    report.jacobsthal = ok;
  }
  if (p >= 5) {
    const Modulus m3(p, 3);
    report.wolstenholme = binom_pascal(2 * p - 1, p - 1, m3, oracle_limit).value() == 1;

    bool glaisher_ok = true;
    for (std::uint64_t a = 1; a <= kABound && glaisher_ok; ++a)
      glaisher_ok = binom_pascal(p * a - 1, p - 1, m3, oracle_limit).value() == 1;
    report.glaisher = glaisher_ok;

    const std::uint64_t half = (p - 1) / 2;
    const std::uint64_t expected = mul_mod(
        sign_pow(half, m3.value()), detail::pow_mod(4, p - 1, m3.value()), m3.value());
    report.morley = binom_pascal(p - 1, half, m3, oracle_limit).value() == expected;
  }
  return report;
}

bool yeung_check(std::uint64_t p, std::uint64_t oracle_limit) {
  if (!is_prime(p)) throw std::invalid_argument("yeung_check: p is not prime");
  if (p % 3 != 1) throw std::domain_error("yeung_check: p != 1 mod 3");
  if (p > oracle_limit)
    throw oracle_limit_error("oracle limit exceeded: p > " + std::to_string(oracle_limit));

  const Modulus mod(p, 2);
  const std::uint64_t q = mod.value();
  const auto [a, b] = cornacchia_4p(p);
  const std::uint64_t a_res =
      a >= 0 ? static_cast<std::uint64_t>(a) % q : q - static_cast<std::uint64_t>(-a) % q;

  const DigitPair center = center_pair(p);
  const std::uint64_t lhs = binom_pascal(center.r, center.s, mod, oracle_limit).value();
  const std::uint64_t rhs = add_mod(q - a_res, mul_mod(p, inv_mod(a_res, q), q), q);
  return lhs == rhs;
}

}  // namespace lucaskit
