#ifndef AIJ_STACK_HPP
#define AIJ_STACK_HPP

// Running a computation on a thread with a chosen stack size. The evaluator
// recurses once per nested call, so deep inputs (fact 10000, say) need more
// than the default 8 MiB.

#include <pthread.h>

#include <cctype>
#include <cstddef>
#include <exception>
#include <optional>
#include <string>
#include <type_traits>

#include "aij/error.hpp"

namespace aij {

/// Parses "512M", "1G", "65536" or "64K" into bytes.
[[nodiscard]] inline std::size_t parse_size(std::string_view text) {
  std::size_t value = 0;
  std::size_t i = 0;
  for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
    value = value * 10 + static_cast<std::size_t>(text[i] - '0');
  }
  if (i == 0) fail(ErrorKind::usage, "bad size: " + std::string(text));
  std::size_t scale = 1;
  if (i < text.size()) {
    switch (std::toupper(static_cast<unsigned char>(text[i]))) {
      case 'K': scale = std::size_t{1} << 10; break;
      case 'M': scale = std::size_t{1} << 20; break;
      case 'G': scale = std::size_t{1} << 30; break;
      default: fail(ErrorKind::usage, "bad size: " + std::string(text));
    }
    if (i + 1 != text.size()) fail(ErrorKind::usage, "bad size: " + std::string(text));
  }
  return value * scale;
}

/// Runs `f` on a fresh thread whose stack holds `bytes`, waits for it, and
/// returns its result or rethrows its exception.
template <class F>
auto run_with_stack(std::size_t bytes, F&& f) -> std::invoke_result_t<F&> {
  using R = std::invoke_result_t<F&>;
  struct Job {
    F* fn;
    std::conditional_t<std::is_void_v<R>, bool, std::optional<R>> result{};
    std::exception_ptr error{};
  } job{&f, {}, {}};

  auto entry = [](void* p) -> void* {
    auto* j = static_cast<Job*>(p);
    try {
      if constexpr (std::is_void_v<R>) {
        (*j->fn)();
      } else {
        j->result.emplace((*j->fn)());
      }
    } catch (...) {
      j->error = std::current_exception();
    }
    return nullptr;
  };

  pthread_attr_t attr;
  pthread_attr_init(&attr);
  if (bytes > 0 && pthread_attr_setstacksize(&attr, bytes) != 0) {
    pthread_attr_destroy(&attr);
    fail(ErrorKind::usage, "stack size " + std::to_string(bytes) + " rejected");
  }
  pthread_t thread;
  const int rc = pthread_create(&thread, &attr, +entry, &job);
  pthread_attr_destroy(&attr);
  if (rc != 0) fail(ErrorKind::io, "cannot start evaluation thread");
  pthread_join(thread, nullptr);
  if (job.error) std::rethrow_exception(job.error);
  if constexpr (!std::is_void_v<R>) return std::move(*job.result);
}

}  // namespace aij

#endif  // AIJ_STACK_HPP
