#pragma once

#include <cstdint>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qbc {

/// Discrete-event queue ordered by (time, insertion order). Events scheduled
/// for the same instant run in the order they were pushed.
template <typename Event>
class EventQueue {
 public:
  struct Entry {
    std::uint64_t time;
    std::uint64_t seq;
    Event event;
  };

  void push(std::uint64_t time, Event event) {
    if (time < now_) throw std::logic_error("event scheduled in the past");
    heap_.push(Entry{time, next_seq_++, std::move(event)});
  }

  bool empty() const { return heap_.empty(); }
  std::uint64_t now() const noexcept { return now_; }

  Entry pop() {
    Entry e = heap_.top();
    heap_.pop();
    now_ = e.time;
    return e;
  }

 private:
  struct Later {
    bool operator()(const Entry& a, const Entry& b) const {
      return a.time != b.time ? a.time > b.time : a.seq > b.seq;
    }
  };

  std::priority_queue<Entry, std::vector<Entry>, Later> heap_;
  std::uint64_t next_seq_ = 0;
  std::uint64_t now_ = 0;
};

}  // namespace qbc
