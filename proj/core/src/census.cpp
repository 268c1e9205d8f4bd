#include "lucaskit/census.hpp"

#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace lucaskit {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string format_pairs(const std::vector<DigitPair>& pairs) {
  std::string out;
  for (const auto& q : pairs) {
    if (!out.empty()) out += " ";
    out += "(" + std::to_string(q.r) + "," + std::to_string(q.s) + ")";
  }
  return out.empty() ? "(none)" : out;
}

// pairs present in a but not in b
std::vector<DigitPair> pair_difference(const std::vector<DigitPair>& a,
                                       const std::vector<DigitPair>& b) {
  std::vector<DigitPair> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

void check_agreement(std::uint64_t p, const char* name_a, const DSet& a,
                     const char* name_b, const DSet& b) {
  if (a.pairs == b.pairs) return;
  throw cross_validation_error(
      "census cross-validation failed at p = " + std::to_string(p) + ": " + name_a +
      " minus " + name_b + " = " + format_pairs(pair_difference(a.pairs, b.pairs)) +
      "; " + name_b + " minus " + name_a + " = " +
      format_pairs(pair_difference(b.pairs, a.pairs)));
}

CensusRecord compute_record(std::uint64_t p, const CensusOptions& opts) {
  CensusRecord rec;
  rec.p = p;
  const auto start = std::chrono::steady_clock::now();
  try {
    if (opts.cross_validate) {
      const DSet h = dset_harmonic(p);
      const DSet r = dset_rotation(p);
      const DSet b = dset_bruteforce(p, 2, 2, opts.oracle_limit);
      check_agreement(p, "harmonic", h, "rotation", r);
      check_agreement(p, "harmonic", h, "bruteforce", b);
      rec.pairs = h.pairs;
    } else {
      switch (opts.method) {
        case DsetMethod::harmonic: rec.pairs = dset_harmonic(p).pairs; break;
        case DsetMethod::rotation: rec.pairs = dset_rotation(p).pairs; break;
        case DsetMethod::bruteforce:
          rec.pairs = dset_bruteforce(p, 2, 2, opts.oracle_limit).pairs;
          break;
      }
    }
    rec.wieferich = p >= 3 && is_wieferich(p);
    if (p % 3 == 1) rec.center = center_pair(p);
  } catch (const oracle_limit_error& e) {
    rec = CensusRecord{};
    rec.p = p;
    rec.error = e.what();
  }
  rec.elapsed_ns = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() -
                                                           start)
          .count());
  return rec;
}

ordered_json record_to_json(const CensusRecord& rec) {
  ordered_json j;
  j["p"] = rec.p;
  if (!rec.error.empty()) {
    j["error"] = rec.error;
    return j;
  }
  j["size"] = rec.pairs.size();
  auto pairs = ordered_json::array();
  for (const auto& q : rec.pairs) pairs.push_back({q.r, q.s});
  j["pairs"] = std::move(pairs);
  j["wieferich"] = rec.wieferich;
  if (rec.center)
    j["center"] = {rec.center->r, rec.center->s};
  else
    j["center"] = nullptr;
  j["elapsed_ns"] = rec.elapsed_ns;
  return j;
}

DigitPair pair_from_json(const ordered_json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_unsigned() ||
      !j[1].is_number_unsigned())
    throw std::runtime_error("pair is not an array of two nonnegative integers");
  return {j[0].get<std::uint64_t>(), j[1].get<std::uint64_t>()};
}

CensusRecord record_from_json(const ordered_json& j) {
  CensusRecord rec;
  if (!j.is_object() || !j.contains("p") || !j["p"].is_number_unsigned())
    throw std::runtime_error("record needs an unsigned \"p\" field");
  rec.p = j["p"].get<std::uint64_t>();
  if (j.contains("error")) {
    rec.error = j["error"].get<std::string>();
    return rec;
  }
  for (const char* key : {"size", "pairs", "wieferich", "center", "elapsed_ns"})
    if (!j.contains(key)) throw std::runtime_error(std::string("missing field \"") + key + "\"");
  for (const auto& q : j["pairs"]) rec.pairs.push_back(pair_from_json(q));
  if (!std::is_sorted(rec.pairs.begin(), rec.pairs.end()))
    throw std::runtime_error("pairs are not sorted");
  if (j["size"].get<std::uint64_t>() != rec.pairs.size())
    throw std::runtime_error("size field disagrees with pairs length");
  rec.wieferich = j["wieferich"].get<bool>();
  if (!j["center"].is_null()) rec.center = pair_from_json(j["center"]);
  rec.elapsed_ns = j["elapsed_ns"].get<std::uint64_t>();
  return rec;
}

}  // namespace

std::vector<std::uint64_t> sieve_primes(std::uint64_t limit) {
  if (limit < 2) return {};
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::uint64_t> primes;
  for (std::uint64_t n = 2; n <= limit; ++n) {
    if (composite[n]) continue;
    primes.push_back(n);
    for (std::uint64_t k = n * n; k <= limit; k += n) composite[k] = true;
  }
  return primes;
}

void run_census(const CensusOptions& opts,
                const std::function<void(const CensusRecord&)>& sink) {
  if (opts.p_min > opts.p_max)
    throw std::invalid_argument("run_census: p_min exceeds p_max");

  std::vector<std::uint64_t> primes = sieve_primes(opts.p_max);
  std::erase_if(primes, [&](std::uint64_t p) {
    return p < opts.p_min ||
           std::find(opts.skip_primes.begin(), opts.skip_primes.end(), p) !=
               opts.skip_primes.end();
  });

  const unsigned workers = std::max(1u, opts.workers);
  if (workers == 1) {
    for (std::uint64_t p : primes) sink(compute_record(p, opts));
    return;
  }

  // Per-prime work is independent; a bounded reorder buffer restores
  // ascending output order and keeps memory flat.
  const std::size_t window = std::max<std::size_t>(16, 4 * workers);
  std::mutex mu;
  std::condition_variable cv;
  std::size_t next = 0;
  std::size_t emitted = 0;
  std::map<std::size_t, CensusRecord> buffer;
  std::exception_ptr failure;
  bool abort = false;

  auto worker_loop = [&] {
    for (;;) {
      std::size_t index;
      {
        std::unique_lock<std::mutex> lock(mu);
        cv.wait(lock, [&] { return abort || next - emitted < window; });
        if (abort || next >= primes.size()) return;
        index = next++;
      }
      CensusRecord rec;
      try {
        rec = compute_record(primes[index], opts);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
        abort = true;
        cv.notify_all();
        return;
      }
      std::lock_guard<std::mutex> lock(mu);
      buffer.emplace(index, std::move(rec));
      try {
        while (!buffer.empty() && buffer.begin()->first == emitted) {
          sink(buffer.begin()->second);
          buffer.erase(buffer.begin());
          ++emitted;
        }
      } catch (...) {
        if (!failure) failure = std::current_exception();
        abort = true;
      }
      cv.notify_all();
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker_loop);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<CensusRecord> run_census(const CensusOptions& opts) {
  std::vector<CensusRecord> records;
  run_census(opts, [&](const CensusRecord& rec) { records.push_back(rec); });
  return records;
}

void write_record_line(std::ostream& out, const CensusRecord& record) {
  out << record_to_json(record).dump() << "\n";
}

void write_records(const std::vector<CensusRecord>& records, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  for (const auto& rec : records) write_record_line(out, rec);
}

CensusRecord parse_record_line(const std::string& line) {
  return record_from_json(ordered_json::parse(line));
}

std::vector<CensusRecord> read_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::vector<CensusRecord> records;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    try {
      records.push_back(parse_record_line(line));
    } catch (const std::exception& e) {
      throw std::runtime_error(path + ": line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return records;
}

void write_summary_csv(const std::vector<CensusRecord>& records, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "p,size,wieferich\n";
  for (const auto& rec : records) {
    if (!rec.error.empty()) continue;
    out << rec.p << "," << rec.pairs.size() << "," << (rec.wieferich ? "true" : "false")
        << "\n";
  }
}

}  // namespace lucaskit
