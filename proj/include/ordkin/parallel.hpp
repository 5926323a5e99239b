#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace ordkin {

/// Runs body(begin, end, chunk) over `chunks` contiguous slices of [0, n).
/// The slicing depends only on n and `chunks`, never on `threads`, so any
/// reduction done per chunk and combined in chunk order is bit-stable. The
/// first exception thrown by a chunk (in chunk order) is rethrown.
template <class Body>
void parallel_chunks(std::size_t n, std::size_t chunks, int threads, Body&& body) {
  chunks = std::max<std::size_t>(1, std::min(chunks, n == 0 ? 1 : n));
  auto bounds = [&](std::size_t c) { return std::pair{n * c / chunks, n * (c + 1) / chunks}; };
  std::vector<std::exception_ptr> errors(chunks);
  auto run = [&](std::size_t c) {
    try {
      auto [b, e] = bounds(c);
      body(b, e, c);
    } catch (...) {
      errors[c] = std::current_exception();
    }
  };
  if (threads <= 1 || chunks == 1) {
    for (std::size_t c = 0; c < chunks; ++c) run(c);
  } else {
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), chunks);
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t c = w; c < chunks; c += workers) run(c);
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace ordkin
