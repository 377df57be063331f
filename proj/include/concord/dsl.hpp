#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "concord/domain.hpp"
#include "concord/errors.hpp"

namespace concord::dsl {

// Statement files:
//
//   vars adult:0..5, child:0..5, dog:0..5
//   combiner sum
//   models hierarchical
//   stakeholder S1 { (1,4,0) > (2,3,3) }
//
// `combiner` also accepts `table {u1,u2,...} [r1; r2; ...]` with the
// universe in ascending order and one row of results per universe value.

enum class Code {
  kLexical = 1,
  kSyntax,
  kArity,
  kRange,
  kDuplicateStakeholder,
  kDuplicateVariable,
  kDomain,
  kCombiner,
};
/// "E001" .. "E008"
std::string code_name(Code c);

struct Position {
  std::size_t line = 1;
  std::size_t column = 1;
};

struct Diagnostic {
  Code code;
  Position at;
  std::string message;

  /// "3:14: error E002: expected ')'"
  std::string str() const;
};

class ParseError : public InputError {
 public:
  explicit ParseError(Diagnostic d);
  const Diagnostic& diagnostic() const { return diag_; }

 private:
  Diagnostic diag_;
};

struct Document {
  Profile profile;
  /// Where each stakeholder block starts.
  std::vector<Position> stakeholder_at;

  /// Spans are not compared.
  bool operator==(const Document& o) const { return profile == o.profile; }
};

/// Throws ParseError.
Document parse(std::string_view text);

/// Statement text such as "(1,4,0) > (2,3,3)", checked against `space`.
Statement parse_statement(std::string_view text, const VariableSpace& space);

std::string render(const Alternative& a);
std::string render(const Statement& s);
/// Canonical file text; parse(render(p)) == p. Domains must be integer
/// ranges.
std::string render(const Profile& p);

}  // namespace concord::dsl
