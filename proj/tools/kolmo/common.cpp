#include "suites.hpp"

#include "kolmo/expr/parse.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace kolmo::cli {

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < threads; ++k) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

ZeroTestConfig zero_config(std::uint64_t seed, const std::vector<Constraint>& constraints) {
  ZeroTestConfig c;
  c.seed = seed;
  c.sampling.constraints = constraints;
  return c;
}

json witness_json(const ZeroVerdict& v) {
  json j;
  j["zero"] = v.zero;
  j["samples"] = v.samples;
  if (v.witness) {
    j["witness"] = {{"point", v.witness->point}, {"value", v.witness->value}, {"scale", v.witness->scale}};
  }
  return j;
}

Bindings to_bindings(const std::map<std::string, std::string>& values) {
  Bindings b;
  for (auto& [k, v] : values) b.bind(k, parse(v));
  return b;
}

std::string binding_label(const std::map<std::string, std::string>& values) {
  std::string s;
  for (auto& [k, v] : values) s += (s.empty() ? "" : ", ") + k + "=" + v;
  return s.empty() ? "-" : s;
}

std::vector<Constraint> parse_constraints(const std::vector<std::string>& texts) {
  std::vector<Constraint> out;
  for (auto& t : texts) out.push_back(parse_constraint(t));
  return out;
}

std::vector<Constraint> remaining(const std::vector<Constraint>& all, const std::map<std::string, std::string>& bound) {
  std::vector<Constraint> out;
  for (auto& c : all) {
    bool touched = false;
    for (auto& s : c.symbols()) touched = touched || bound.contains(s);
    if (!touched) out.push_back(c);
  }
  return out;
}

}  // namespace kolmo::cli
