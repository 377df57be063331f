#include "concord/domain.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

#include "concord/errors.hpp"

namespace concord {

VariableSpace::VariableSpace(std::vector<std::string> names,
                             std::vector<std::vector<Value>> domains)
    : names_(std::move(names)), domains_(std::move(domains)) {
  if (names_.empty()) throw InputError("variable space needs at least one variable");
  if (names_.size() != domains_.size())
    throw InputError("variable space: one domain per variable required");
  std::set<std::string> seen;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) throw InputError("variable space: empty variable name");
    if (!seen.insert(names_[i]).second)
      throw InputError("variable space: duplicate variable '" + names_[i] + "'");
    const auto& d = domains_[i];
    if (d.size() < 2)
      throw InputError("variable '" + names_[i] +
                       "': domain needs more than one value");
    for (std::size_t k = 1; k < d.size(); ++k)
      if (d[k - 1] >= d[k])
        throw InputError("variable '" + names_[i] +
                         "': domain must be strictly ascending");
  }
}

VariableSpace VariableSpace::uniform(std::vector<std::string> names, Value lo,
                                     Value hi) {
  if (hi <= lo) throw InputError("uniform space: need lo < hi");
  if (hi - lo > 1'000'000) throw CapacityError("uniform space: domain too large");
  std::vector<Value> d;
  for (Value v = lo; v <= hi; ++v) d.push_back(v);
  std::vector<std::vector<Value>> domains(names.size(), d);
  return VariableSpace(std::move(names), std::move(domains));
}

VariableSpace VariableSpace::binary(std::vector<std::string> names) {
  return uniform(std::move(names), 0, 1);
}

bool VariableSpace::contains(std::size_t var, Value v) const {
  const auto& d = domains_.at(var);
  return std::binary_search(d.begin(), d.end(), v);
}

std::size_t VariableSpace::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  return static_cast<std::size_t>(it - names_.begin());
}

std::uint64_t VariableSpace::alternative_count() const {
  std::uint64_t n = 1;
  for (const auto& d : domains_) {
    if (n > std::numeric_limits<std::uint64_t>::max() / d.size())
      return std::numeric_limits<std::uint64_t>::max();
    n *= d.size();
  }
  return n;
}

void Alternative::validate(const VariableSpace& space) const {
  if (values_.size() != space.size()) {
    std::ostringstream os;
    os << "alternative has " << values_.size() << " values, space has "
       << space.size() << " variables";
    throw InputError(os.str());
  }
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (!space.contains(i, values_[i])) {
      std::ostringstream os;
      os << "value " << values_[i] << " outside the domain of '"
         << space.name(i) << "'";
      throw InputError(os.str());
    }
}

// ---------------------------------------------------------------------------

Combiner::Combiner(Kind kind) : kind_(kind) {
  if (kind == Kind::kTable)
    throw InputError("table combiners are built with Combiner::table");
}

Combiner Combiner::table(std::vector<Value> universe,
                         std::vector<std::vector<Value>> table) {
  Combiner c(Kind::kSum);
  c.kind_ = Kind::kTable;
  const std::size_t n = universe.size();
  if (n == 0) throw InputError("table combiner: empty universe");
  {
    auto sorted = universe;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw InputError("table combiner: duplicate universe value");
  }
  if (table.size() != n)
    throw InputError("table combiner: table must be |universe| x |universe|");
  for (const auto& row : table)
    if (row.size() != n)
      throw InputError("table combiner: table must be |universe| x |universe|");
  c.universe_ = std::move(universe);
  c.table_ = std::move(table);
  for (const auto& row : c.table_)
    for (Value v : row)
      if (!c.accepts(v))
        throw InputError("table combiner: result outside the universe");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (c.table_[i][j] != c.table_[j][i])
        throw InputError("table combiner: operation is not commutative");
      for (std::size_t k = 0; k < n; ++k) {
        Value lhs = c.combine(c.table_[i][j], c.universe_[k]);
        Value rhs = c.combine(c.universe_[i], c.table_[j][k]);
        if (lhs != rhs)
          throw InputError("table combiner: operation is not associative");
      }
    }
  return c;
}

bool Combiner::accepts(Value v) const {
  switch (kind_) {
    case Kind::kAnd:
    case Kind::kOr:
      return v == 0 || v == 1;
    case Kind::kTable:
      return std::find(universe_.begin(), universe_.end(), v) !=
             universe_.end();
    default:
      return true;
  }
}

void Combiner::check_operand(Value v) const {
  if (!accepts(v)) {
    std::ostringstream os;
    os << "value " << v << " is not an operand of the " << to_string(kind_)
       << " combiner";
    throw DomainMismatch(os.str());
  }
}

std::size_t Combiner::rank(Value v) const {
  auto it = std::find(universe_.begin(), universe_.end(), v);
  if (it == universe_.end()) check_operand(v);
  return static_cast<std::size_t>(it - universe_.begin());
}

Value Combiner::combine(Value a, Value b) const {
  switch (kind_) {
    case Kind::kSum: {
      Value r;
      if (__builtin_add_overflow(a, b, &r))
        throw DomainMismatch("sum combiner overflow");
      return r;
    }
    case Kind::kProduct: {
      Value r;
      if (__builtin_mul_overflow(a, b, &r))
        throw DomainMismatch("product combiner overflow");
      return r;
    }
    case Kind::kMin:
      return std::min(a, b);
    case Kind::kMax:
      return std::max(a, b);
    case Kind::kAnd:
      check_operand(a), check_operand(b);
      return (a != 0 && b != 0) ? 1 : 0;
    case Kind::kOr:
      check_operand(a), check_operand(b);
      return (a != 0 || b != 0) ? 1 : 0;
    case Kind::kTable:
      return table_[rank(a)][rank(b)];
  }
  return 0;
}

int Combiner::compare(Value a, Value b) const {
  if (kind_ == Kind::kTable) {
    std::size_t ra = rank(a), rb = rank(b);
    return ra < rb ? -1 : (ra > rb ? 1 : 0);
  }
  return a < b ? -1 : (a > b ? 1 : 0);
}

bool Combiner::monotone() const {
  switch (kind_) {
    case Kind::kSum:
    case Kind::kMin:
    case Kind::kMax:
    case Kind::kAnd:
    case Kind::kOr:
      return true;
    default:
      return false;
  }
}

const char* to_string(Combiner::Kind kind) {
  switch (kind) {
    case Combiner::Kind::kSum: return "sum";
    case Combiner::Kind::kProduct: return "product";
    case Combiner::Kind::kMin: return "min";
    case Combiner::Kind::kMax: return "max";
    case Combiner::Kind::kAnd: return "and";
    case Combiner::Kind::kOr: return "or";
    case Combiner::Kind::kTable: return "table";
  }
  return "?";
}

// ---------------------------------------------------------------------------

Statement complement(const Statement& s) {
  return {s.right, s.left,
          s.strict() ? Relation::kNonStrict : Relation::kStrict};
}

namespace {

Statement binarize_with(const Statement& s, auto&& cmp) {
  if (s.left.size() != s.right.size())
    throw InputError("binarize: alternatives of different arity");
  std::vector<Value> a(s.left.size(), 0), b(s.right.size(), 0);
  for (std::size_t v = 0; v < a.size(); ++v) {
    int c = cmp(s.left[v], s.right[v]);
    if (c > 0) a[v] = 1;
    if (c < 0) b[v] = 1;
  }
  return {Alternative(std::move(a)), Alternative(std::move(b)), s.relation};
}

}  // namespace

Statement binarize(const Statement& s) {
  return binarize_with(s, [](Value x, Value y) { return x < y ? -1 : (x > y); });
}

Statement binarize(const Statement& s, const Combiner& c) {
  return binarize_with(s, [&](Value x, Value y) { return c.compare(x, y); });
}

StatementSet normalize(StatementSet set) {
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  return set;
}

bool same_statements(const StatementSet& a, const StatementSet& b) {
  return normalize(a) == normalize(b);
}

const char* to_string(Triviality t) {
  switch (t) {
    case Triviality::kTautology: return "tautology";
    case Triviality::kContradiction: return "contradiction";
    case Triviality::kNonTrivial: return "non-trivial";
  }
  return "?";
}

const char* to_string(ModelClass m) {
  return m == ModelClass::kHierarchical ? "hierarchical" : "lexicographic";
}

void Profile::validate() const {
  std::set<std::string> names;
  for (std::size_t v = 0; v < space.size(); ++v)
    for (Value x : space.domain(v)) combiner.check_operand(x);
  for (const auto& sh : stakeholders) {
    if (!names.insert(sh.name).second)
      throw InputError("duplicate stakeholder '" + sh.name + "'");
    for (const auto& s : sh.statements) {
      s.left.validate(space);
      s.right.validate(space);
    }
  }
}

StatementSet Profile::union_statements() const {
  StatementSet all;
  for (const auto& sh : stakeholders)
    all.insert(all.end(), sh.statements.begin(), sh.statements.end());
  return normalize(std::move(all));
}

}  // namespace concord
