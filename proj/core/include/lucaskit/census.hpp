#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lucaskit/lucas.hpp"

namespace lucaskit {

/// Raised when cross-validation finds the three D(p) methods disagreeing.
class cross_validation_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// One census row: D(p) together with the per-prime extras.  A nonempty
/// error marks a prime the scan could not handle (the other fields are then
/// empty) without aborting the run.
struct CensusRecord {
  std::uint64_t p = 0;
  std::vector<DigitPair> pairs;  // sorted; |D(p)| is pairs.size()
  bool wieferich = false;
  std::optional<DigitPair> center;  // present iff p = 1 mod 3
  std::uint64_t elapsed_ns = 0;
  std::string error;

  std::size_t size() const { return pairs.size(); }
  friend bool operator==(const CensusRecord&, const CensusRecord&) = default;
};

struct CensusOptions {
  std::uint64_t p_min = 2;
  std::uint64_t p_max = 2;
  DsetMethod method = DsetMethod::harmonic;
  bool cross_validate = false;
  unsigned workers = 1;
  std::uint64_t oracle_limit = kDefaultOracleLimit;
  std::vector<std::uint64_t> skip_primes;  // already-done primes (resume support)
};

/// Primes up to limit, ascending, by sieve of Eratosthenes.  Empty for
/// limit < 2.
std::vector<std::uint64_t> sieve_primes(std::uint64_t limit);

/// Scans every prime in [p_min, p_max] and hands records to the sink in
/// ascending-p order, independent of the worker count.  With cross_validate
/// set, all three D(p) methods run per prime and any disagreement aborts the
/// scan with a diagnostic naming p and the differing pairs.
void run_census(const CensusOptions& opts,
                const std::function<void(const CensusRecord&)>& sink);
std::vector<CensusRecord> run_census(const CensusOptions& opts);

/// JSON-lines serialization: one object per prime with keys p, size, pairs,
/// wieferich, center, elapsed_ns (or p, error for failed primes).
void write_record_line(std::ostream& out, const CensusRecord& record);
void write_records(const std::vector<CensusRecord>& records, const std::string& path);
CensusRecord parse_record_line(const std::string& line);
std::vector<CensusRecord> read_records(const std::string& path);

/// Optional summary: CSV with columns p,size,wieferich (error rows skipped).
void write_summary_csv(const std::vector<CensusRecord>& records, const std::string& path);

}  // namespace lucaskit
