#include "fbl/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace fbl {

int worker_count() {
  if (const char* env = std::getenv("FBL_THREADS")) {
    try {
      int v = std::stoi(env);
      if (v >= 1) return v;
    } catch (...) {
    }
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_chunks(std::uint64_t total,
                     const std::function<void(std::uint64_t, std::uint64_t)>& fn) {
  if (total == 0) return;
  const std::uint64_t workers =
      std::min<std::uint64_t>(static_cast<std::uint64_t>(worker_count()), total);
  if (workers <= 1) {
    fn(0, total);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(workers);
  const std::uint64_t per = total / workers;
  const std::uint64_t extra = total % workers;
  std::uint64_t begin = 0;
  for (std::uint64_t w = 0; w < workers; ++w) {
    const std::uint64_t len = per + (w < extra ? 1 : 0);
    threads.emplace_back(fn, begin, begin + len);
    begin += len;
  }
  for (auto& t : threads) t.join();
}

}  // namespace fbl
