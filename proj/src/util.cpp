#include "nabla/util.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "nabla/report.hpp"

namespace nabla {

bool print_report(const Report& report, std::ostream& os) {
  for (const auto& c : report.checks) {
    os << "CHECK " << c.id << " " << (c.pass ? "PASS" : "FAIL");
    if (!c.detail.empty()) os << " " << c.detail;
    os << "\n";
  }
  return report.ok();
}

unsigned worker_count() {
  if (const char* env = std::getenv("NABLA_OPS_JOBS")) {
    int v = std::atoi(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  unsigned jobs = worker_count();
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr first_error;
  auto body = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  unsigned spawn = static_cast<unsigned>(std::min<std::size_t>(jobs, count));
  std::vector<std::thread> pool;
  pool.reserve(spawn);
  for (unsigned t = 0; t < spawn; ++t) pool.emplace_back(body);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

bool for_each_tuple(const std::vector<int>& radix,
                    const std::function<bool(const std::vector<int>&)>& fn) {
  for (int r : radix)
    if (r <= 0) return true;  // some factor is empty: nothing to enumerate
  std::vector<int> t(radix.size(), 0);
  for (;;) {
    if (!fn(t)) return false;
    std::size_t i = 0;
    while (i < t.size()) {
      if (++t[i] < radix[i]) break;
      t[i] = 0;
      ++i;
    }
    if (i == t.size()) return true;
  }
}

}  // namespace nabla
