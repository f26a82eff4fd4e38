#include "soergel/cancel.hpp"

namespace soergel {

namespace {
thread_local std::optional<std::chrono::steady_clock::time_point> t_deadline;
thread_local unsigned t_counter = 0;
}  // namespace

ScopedDeadline::ScopedDeadline(std::chrono::milliseconds budget) : previous_(t_deadline) {
  auto due = std::chrono::steady_clock::now() + budget;
  if (!t_deadline || due < *t_deadline) t_deadline = due;
}

ScopedDeadline::~ScopedDeadline() { t_deadline = previous_; }

void poll_deadline() {
  if (!t_deadline) return;
  if ((++t_counter & 0xFF) != 0) return;
  if (std::chrono::steady_clock::now() > *t_deadline) throw Timeout();
}

}  // namespace soergel
