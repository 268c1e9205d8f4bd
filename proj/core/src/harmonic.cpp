#include "lucaskit/harmonic.hpp"

#include <deque>
#include <mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "lucaskit/modarith.hpp"

namespace lucaskit {

namespace {

struct TableCache {
  std::mutex mu;
  std::size_t capacity = 64;
  std::unordered_map<std::uint64_t, std::shared_ptr<const HarmonicTable>> map;
  std::deque<std::uint64_t> order;  // FIFO eviction
};

TableCache& cache() {
  static TableCache c;
  return c;
}

std::shared_ptr<const HarmonicTable> build_table(std::uint64_t p) {
  auto table = std::make_shared<HarmonicTable>();
  table->p = p;
  table->values.resize(p);
  table->values[0] = 0;
  const auto inv = batch_inverses(p);
  for (std::uint64_t n = 1; n < p; ++n)
    table->values[n] = detail::add_mod(table->values[n - 1], inv[n - 1], p);
  return table;
}

}  // namespace

std::uint64_t HarmonicTable::at(std::uint64_t n) const {
  if (n >= p)
    throw std::out_of_range("harmonic index out of range: n = " + std::to_string(n) +
                            ", p = " + std::to_string(p));
  return values[n];
}

std::shared_ptr<const HarmonicTable> harmonic_table(std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("harmonic_table: p is not prime");
  auto& c = cache();
  {
    std::lock_guard<std::mutex> lock(c.mu);
    auto it = c.map.find(p);
    if (it != c.map.end()) return it->second;
  }
  auto table = build_table(p);  // computed outside the lock; duplicate work is idempotent
  std::lock_guard<std::mutex> lock(c.mu);
  auto [it, inserted] = c.map.emplace(p, table);
  if (inserted) {
    c.order.push_back(p);
    while (c.order.size() > c.capacity) {
      c.map.erase(c.order.front());
      c.order.pop_front();
    }
  }
  return it->second;
}

std::uint64_t harmonic(std::uint64_t p, std::uint64_t n) {
  return harmonic_table(p)->at(n);
}

void set_harmonic_cache_capacity(std::size_t capacity) {
  auto& c = cache();
  std::lock_guard<std::mutex> lock(c.mu);
  c.capacity = capacity;
  while (c.order.size() > c.capacity) {
    c.map.erase(c.order.front());
    c.order.pop_front();
  }
}

}  // namespace lucaskit
