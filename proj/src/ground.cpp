#include "concord/ground.hpp"

namespace concord {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass:
      return "pass";
    case Verdict::kFail:
      return "fail";
    case Verdict::kNotChecked:
      return "not-checked";
  }
  return "?";
}

bool PostulateReport::passes_p1_to_p4() const {
  return p1.verdict == Verdict::kPass && p2.verdict == Verdict::kPass &&
         p3.verdict == Verdict::kPass && p4.verdict == Verdict::kPass;
}

bool PostulateReport::passes() const {
  return passes_p1_to_p4() && p5.verdict != Verdict::kFail;
}

}  // namespace concord
