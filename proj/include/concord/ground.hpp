#pragma once

#include <vector>

#include "concord/domain.hpp"

namespace concord {

enum class Verdict { kPass, kFail, kNotChecked };
const char* to_string(Verdict v);

struct PostulateVerdict {
  Verdict verdict = Verdict::kNotChecked;
  /// Statements responsible for a failure, when the postulate is
  /// per-statement (P3, P4) or the failing set itself otherwise.
  StatementSet offending;
};

/// P1..P5 for one candidate middle ground.
struct PostulateReport {
  PostulateVerdict p1, p2, p3, p4, p5;

  /// P1–P4 pass, and P5 passes too when it was checked.
  bool passes() const;
  bool passes_p1_to_p4() const;
};

/// Middle grounds, pairwise non-equivalent. `exhaustive` records whether the
/// scanned language was the whole language (or the binary language under
/// lexicographic models, which is enough there).
struct MiddleGroundSet {
  std::vector<StatementSet> grounds;
  bool exhaustive = false;

  bool empty() const { return grounds.empty(); }
};

}  // namespace concord
