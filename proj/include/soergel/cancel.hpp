#pragma once

#include <chrono>
#include <optional>
#include <stdexcept>

namespace soergel {

/// Raised from inside long computations once the calling thread's deadline
/// has passed.
struct Timeout : std::runtime_error {
  Timeout() : std::runtime_error("computation exceeded its time budget") {}
};

/// Installs a per-thread deadline for the lifetime of the object. Nested
/// deadlines keep the earlier of the two.
class ScopedDeadline {
 public:
  explicit ScopedDeadline(std::chrono::milliseconds budget);
  ~ScopedDeadline();
  ScopedDeadline(const ScopedDeadline&) = delete;
  ScopedDeadline& operator=(const ScopedDeadline&) = delete;

 private:
  std::optional<std::chrono::steady_clock::time_point> previous_;
};

/// Cheap check called from inner loops; throws Timeout when due.
void poll_deadline();

}  // namespace soergel
