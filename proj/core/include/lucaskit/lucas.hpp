#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lucaskit/modarith.hpp"

namespace lucaskit {

/// A pair (r, s) of base-p digits; the coordinate system of D(p).
/// Ordering is lexicographic by (r, s).
struct DigitPair {
  std::uint64_t r = 0;
  std::uint64_t s = 0;
  auto operator<=>(const DigitPair&) const = default;
};

enum class DsetMethod { harmonic, rotation, bruteforce };

std::string to_string(DsetMethod method);
DsetMethod dset_method_from_string(const std::string& name);

/// The set D(p) of digit pairs for which the Lucas congruence
/// C(pa+r, pb+s) = C(a,b) C(r,s) holds mod p^2 for all a, b >= 0.
struct DSet {
  std::uint64_t p = 0;
  std::vector<DigitPair> pairs;  // sorted lexicographically
  DsetMethod method = DsetMethod::harmonic;

  std::size_t size() const { return pairs.size(); }
  bool contains(const DigitPair& q) const;
};

/// Reflection through the vertical altitude: (r, s) -> (r, r-s).
DigitPair reflect(std::uint64_t p, DigitPair q);

/// Rotation by 120 degrees: (r, s) -> (p-1-s, r-s); preserves s <= r.
DigitPair rotate(std::uint64_t p, DigitPair q);

/// Closure of {q} under reflect and rotate, sorted; its size divides 6.
std::vector<DigitPair> orbit(std::uint64_t p, DigitPair q);

/// D(p) from the harmonic criterion H_r = H_{r-s} = H_s mod p.
DSet dset_harmonic(std::uint64_t p);

/// D(p) from the signed rotation congruence
/// C(r,s) = (-1)^{r-s} C(p-1-s, r-s) = (-1)^s C(p-1-r+s, s) mod p^2.
DSet dset_rotation(std::uint64_t p);

/// D(p) by direct oracle verification of the Lucas congruence over
/// a <= a_max, b <= b_max.  Also re-verifies that every pair with s > r
/// fails at (a, b) = (1, 0): C(p+r, s) is divisible by p but not p^2.
DSet dset_bruteforce(std::uint64_t p, std::uint64_t a_max = 2, std::uint64_t b_max = 2,
                     std::uint64_t oracle_limit = kDefaultOracleLimit);

/// Right-hand side of the general congruence
/// C(pa+r, pb+s) = C(a,b) C(r,s) (1 + pa (H_r - H_{r-s}) + pb (H_{r-s} - H_s))
/// evaluated mod p^2.
Residue general_congruence_rhs(std::uint64_t p, std::uint64_t a, std::uint64_t b,
                               std::uint64_t r, std::uint64_t s);

/// Exact oracle vs. general_congruence_rhs; true always, a fuzz target.
bool check_general_congruence(std::uint64_t p, std::uint64_t a, std::uint64_t b,
                              std::uint64_t r, std::uint64_t s,
                              std::uint64_t oracle_limit = kDefaultOracleLimit);

/// C(r,s) = (-1)^{r-s} C(p-1-s, r-s) (1 + p H_r - p H_s) mod p^2; true always.
bool check_rotation_identity(std::uint64_t p, std::uint64_t r, std::uint64_t s);

/// C(r,s) = (-1)^{r-s} C(p-1-s, r-s) mod p; true always.
bool check_rotation_mod_p(std::uint64_t p, std::uint64_t r, std::uint64_t s);

/// 2^{p-1} = 1 mod p^2.  Rejects p = 2.
bool is_wieferich(std::uint64_t p);

/// Equivalent criterion H_{(p-1)/2} = 0 mod p.  Rejects p = 2.
bool wieferich_via_harmonic(std::uint64_t p);

/// Center of the digit triangle, (2(p-1)/3, (p-1)/3); requires p = 1 mod 3,
/// and is then always a member of D(p).
DigitPair center_pair(std::uint64_t p);

/// The unique split 4p = a^2 + 27 b^2 with b > 0 and a = 1 mod 3.
struct CornacchiaPair {
  std::int64_t a = 0;
  std::uint64_t b = 0;
};
CornacchiaPair cornacchia_4p(std::uint64_t p);

/// Digit pairs whose Lucas congruence holds mod p^3 for all a <= a_max,
/// b <= b_max.  An empirical sample, not a theorem: for every prime tried so
/// far it is exactly {(0,0), (p-1,0), (p-1,p-1)}.
std::vector<DigitPair> dset_mod_p3(std::uint64_t p, std::uint64_t a_max, std::uint64_t b_max,
                                   std::uint64_t oracle_limit = kDefaultOracleLimit);

/// Named classical congruences checked against the exact oracle.  A field is
/// empty when the congruence does not apply at this prime.
struct ClassicalReport {
  std::uint64_t p = 0;
  std::optional<bool> babbage;       // p >= 3:  C(2p-1, p-1) = 1 mod p^2
  std::optional<bool> wolstenholme;  // p >= 5:  same, mod p^3
  std::optional<bool> glaisher;      // p >= 5:  C(pa-1, p-1) = 1 mod p^3, a <= 5
  std::optional<bool> jacobsthal;    // C(pa, pb) = C(a,b); mod p^3 for p >= 5, mod p^2 for p in {2,3}
  std::optional<bool> morley;        // p >= 5:  C(p-1, (p-1)/2) = (-1)^{(p-1)/2} 4^{p-1} mod p^3

  bool all_pass() const;
};
ClassicalReport classical_report(std::uint64_t p,
                                 std::uint64_t oracle_limit = kDefaultOracleLimit);

/// C(2(p-1)/3, (p-1)/3) = -A + p/A mod p^2 with (A, B) from cornacchia_4p.
bool yeung_check(std::uint64_t p, std::uint64_t oracle_limit = kDefaultOracleLimit);

}  // namespace lucaskit
