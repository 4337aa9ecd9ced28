#pragma once

#include <string>
#include <vector>

#include "keypoly/limit.hpp"

namespace keypoly {

/// vacuous: holds only because a side is infinite or nothing is quantified.
/// inconclusive: an existential tail whose witness lies beyond the horizon.
enum class Verdict { pass, vacuous, inconclusive, fail };

std::string to_string(Verdict v);

struct CaseRecord {
  std::string key;  // no spaces
  Value lhs;
  Value rhs;
  Verdict verdict = Verdict::pass;
};

struct CheckCounts {
  std::size_t pass = 0;
  std::size_t vacuous = 0;
  std::size_t inconclusive = 0;
  std::size_t fail = 0;
  std::size_t total() const { return pass + vacuous + inconclusive + fail; }
};

struct CheckReport {
  std::string id;
  std::vector<CaseRecord> cases;

  CheckCounts counts() const;
  bool ok() const { return counts().fail == 0; }
  /// `check_id case_key lhs rhs verdict`, one line per case.
  std::string lines() const;
  /// `check_id pass=.. vacuous=.. inconclusive=.. fail=.. total=..`
  std::string summary() const;
};

/// L21 L22 L23 P24 C25 K31 P32 L41 L42 VAX TRC, in that order.
const std::vector<std::string>& check_catalog();
bool is_check_id(const std::string& id);

/// Evaluates every admissible case of one statement over corpus x chain.
/// Raises InvalidScenario for an invalid scenario, Precondition for an
/// unknown id, and PrecisionExhausted naming the cases that could not be
/// certified.
CheckReport run_check(const std::string& id, const LimitScenario& s, const std::vector<Poly>& corpus);

}  // namespace keypoly
