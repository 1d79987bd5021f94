#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include <boost/math/quadrature/gauss.hpp>

#include "hyperwave/core_types.hpp"

namespace hyperwave {

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
  int nt = std::max(1, std::min<int>(threads, static_cast<int>(count)));
  if (nt <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (int t = 0; t < nt; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!first) first = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first) std::rethrow_exception(first);
}

namespace {
template <int N>
void fill_rule(std::vector<double>& x, std::vector<double>& w) {
  using G = boost::math::quadrature::gauss<double, N>;
  const auto& a = G::abscissa();
  const auto& b = G::weights();
  x.clear();
  w.clear();
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] == 0.0) continue;
    x.push_back(-a[i]);
    w.push_back(b[i]);
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    x.push_back(a[i]);
    w.push_back(b[i]);
  }
}
}  // namespace

void gauss_legendre(int p, std::vector<double>& nodes, std::vector<double>& weights) {
  switch (p) {
    case 8: fill_rule<8>(nodes, weights); break;
    case 12: fill_rule<12>(nodes, weights); break;
    case 16: fill_rule<16>(nodes, weights); break;
    case 20: fill_rule<20>(nodes, weights); break;
    case 30: fill_rule<30>(nodes, weights); break;
    default: fail(ErrorKind::invalid_argument, "unsupported Gauss-Legendre order " + std::to_string(p));
  }
}

}  // namespace hyperwave
