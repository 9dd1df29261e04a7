#pragma once

#include <string>
#include <vector>

namespace monoball {

enum class HypothesisStatus { holds, fails, clipped, unchecked };

inline const char* to_string(HypothesisStatus s) {
  switch (s) {
    case HypothesisStatus::holds: return "holds";
    case HypothesisStatus::fails: return "fails";
    case HypothesisStatus::clipped: return "clipped";
    case HypothesisStatus::unchecked: return "unchecked";
  }
  return "unchecked";
}

struct HypothesisEntry {
  std::string stage;
  std::string hypothesis;
  HypothesisStatus status = HypothesisStatus::unchecked;
  std::string witness;
};

/// Outcome of a conditional check: asserted conclusions only count when every
/// hypothesis holds (clipped and unchecked entries do not block).
enum class Verdict { pass, hypothesis_failed, falsified };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::hypothesis_failed: return "hypothesis_failed";
    case Verdict::falsified: return "falsified";
  }
  return "falsified";
}

class HypothesisLedger {
 public:
  void add(std::string stage, std::string hypothesis, HypothesisStatus status, std::string witness = {}) {
    entries_.push_back({std::move(stage), std::move(hypothesis), status, std::move(witness)});
  }
  void add(std::string stage, std::string hypothesis, bool holds, std::string witness = {}) {
    add(std::move(stage), std::move(hypothesis), holds ? HypothesisStatus::holds : HypothesisStatus::fails,
        std::move(witness));
  }
  bool all_hold() const {
    for (const auto& e : entries_)
      if (e.status == HypothesisStatus::fails) return false;
    return true;
  }
  const std::vector<HypothesisEntry>& entries() const { return entries_; }
  void append(const HypothesisLedger& o) { entries_.insert(entries_.end(), o.entries_.begin(), o.entries_.end()); }

 private:
  std::vector<HypothesisEntry> entries_;
};

// Conclusions that fail under failed hypotheses are descriptive, not falsifications.
inline Verdict verdict_of(const HypothesisLedger& h, bool conclusions_hold) {
  if (!h.all_hold()) return Verdict::hypothesis_failed;
  return conclusions_hold ? Verdict::pass : Verdict::falsified;
}

}  // namespace monoball
