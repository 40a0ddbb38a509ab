// Operation counters and wall-clock timers attributed to the four pipeline
// stages. Counters are bumped with loop-hoisted increments (one addition per
// inner loop, scaled by the trip count), so keeping them always-on costs
// nothing measurable.

#pragma once

#include <chrono>
#include <cstdint>

namespace hemul {

enum class Stage { crt, ntt, intt, icrt, extra, count_ };

struct OpCounts {
  uint64_t mul = 0;     // word multiply (hi+lo)
  uint64_t adc = 0;     // add-with-carry word ops
  uint64_t modmul = 0;  // modular multiplications (Shoup)
  uint64_t addsub = 0;  // modular additions/subtractions
};

struct StageCounters {
  OpCounts stage[static_cast<int>(Stage::count_)];

  OpCounts& operator[](Stage s) { return stage[static_cast<int>(s)]; }
  const OpCounts& operator[](Stage s) const {
    return stage[static_cast<int>(s)];
  }
  void reset() {
    for (auto& c : stage) c = OpCounts{};
  }
  OpCounts total() const {
    OpCounts t;
    for (const auto& c : stage) {
      t.mul += c.mul;
      t.adc += c.adc;
      t.modmul += c.modmul;
      t.addsub += c.addsub;
    }
    return t;
  }
};

struct StageTimers {
  double seconds[static_cast<int>(Stage::count_)] = {};

  double& operator[](Stage s) { return seconds[static_cast<int>(s)]; }
  double operator[](Stage s) const { return seconds[static_cast<int>(s)]; }
  void reset() {
    for (auto& s : seconds) s = 0;
  }
  double total() const {
    double t = 0;
    for (double s : seconds) t += s;
    return t;
  }
};

class ScopedStageTimer {
 public:
  ScopedStageTimer(StageTimers* t, Stage s) : t_(t), s_(s) {
    if (t_) start_ = std::chrono::steady_clock::now();
  }
  ~ScopedStageTimer() {
    if (t_) {
      (*t_)[s_] += std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start_)
                       .count();
    }
  }

 private:
  StageTimers* t_;
  Stage s_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace hemul
