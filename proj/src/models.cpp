#include "concord/models.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "concord/errors.hpp"

namespace concord {

HierarchicalModel::HierarchicalModel(std::vector<VarSet> levels)
    : levels_(std::move(levels)) {
  if (levels_.empty()) throw InputError("hierarchical model: no levels");
  for (auto& y : levels_) {
    if (y.empty()) throw InputError("hierarchical model: empty level");
    std::sort(y.begin(), y.end());
    y.erase(std::unique(y.begin(), y.end()), y.end());
  }
}

HierarchicalModel HierarchicalModel::from_masks(
    const std::vector<std::uint64_t>& masks) {
  std::vector<VarSet> levels;
  for (auto m : masks) {
    VarSet y;
    for (std::size_t v = 0; v < 64; ++v)
      if (m >> v & 1u) y.push_back(v);
    levels.push_back(std::move(y));
  }
  return HierarchicalModel(std::move(levels));
}

LexicographicModel::LexicographicModel(std::vector<std::size_t> order) {
  if (order.empty()) throw InputError("lexicographic model: no variables");
  for (auto v : order)
    if (std::find(order_.begin(), order_.end(), v) == order_.end())
      order_.push_back(v);
}

HierarchicalModel LexicographicModel::as_hierarchical() const {
  std::vector<VarSet> levels;
  for (auto v : order_) levels.push_back({v});
  return HierarchicalModel(std::move(levels));
}

const char* to_string(Comparison c) {
  switch (c) {
    case Comparison::kLess: return "strictly-less";
    case Comparison::kEquivalent: return "equivalent";
    case Comparison::kGreater: return "strictly-greater";
  }
  return "?";
}

Value level_value(const VarSet& y, const Alternative& a, const Combiner& c) {
  if (y.empty()) throw InputError("level_value: empty variable set");
  Value acc = a[y.front()];
  c.check_operand(acc);
  for (std::size_t i = 1; i < y.size(); ++i) acc = c.combine(acc, a[y[i]]);
  return acc;
}

Comparison compare(const HierarchicalModel& pi, const Alternative& a,
                   const Alternative& b, const Combiner& c) {
  for (const auto& y : pi.levels()) {
    int r = c.compare(level_value(y, a, c), level_value(y, b, c));
    if (r != 0) return r > 0 ? Comparison::kGreater : Comparison::kLess;
  }
  return Comparison::kEquivalent;
}

Comparison compare(const LexicographicModel& pi, const Alternative& a,
                   const Alternative& b, const Combiner& c) {
  for (auto v : pi.order()) {
    c.check_operand(a[v]);
    c.check_operand(b[v]);
    int r = c.compare(a[v], b[v]);
    if (r != 0) return r > 0 ? Comparison::kGreater : Comparison::kLess;
  }
  return Comparison::kEquivalent;
}

namespace {

bool holds(Comparison cmp, const Statement& s) {
  return s.strict() ? cmp == Comparison::kGreater : cmp != Comparison::kLess;
}

}  // namespace

bool satisfies(const HierarchicalModel& pi, const Statement& s,
               const Combiner& c) {
  return holds(compare(pi, s.left, s.right, c), s);
}

bool satisfies(const LexicographicModel& pi, const Statement& s,
               const Combiner& c) {
  return holds(compare(pi, s.left, s.right, c), s);
}

std::string render(const HierarchicalModel& pi, const VariableSpace& space) {
  std::string out = "(";
  for (std::size_t i = 0; i < pi.depth(); ++i) {
    if (i) out += ",";
    out += "{";
    const auto& y = pi.levels()[i];
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (j) out += ",";
      out += space.name(y[j]);
    }
    out += "}";
  }
  return out + ")";
}

std::string render(const LexicographicModel& pi, const VariableSpace& space) {
  return render(pi.as_hierarchical(), space);
}

HierarchicalModel parse_model(const std::string& text,
                              const VariableSpace& space) {
  std::size_t pos = 0;
  auto fail = [&](const std::string& what) -> HierarchicalModel {
    std::ostringstream os;
    os << "model text, column " << pos + 1 << ": " << what;
    throw InputError(os.str());
  };
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  };
  auto expect = [&](char ch) {
    skip();
    if (pos >= text.size() || text[pos] != ch)
      fail(std::string("expected '") + ch + "'");
    ++pos;
  };
  std::vector<VarSet> levels;
  expect('(');
  do {
    expect('{');
    VarSet y;
    do {
      skip();
      std::size_t start = pos;
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
        ++pos;
      std::string name = text.substr(start, pos - start);
      std::size_t idx = space.index_of(name);
      if (name.empty() || idx == space.size()) fail("unknown variable '" + name + "'");
      y.push_back(idx);
      skip();
    } while (pos < text.size() && text[pos] == ',' && ++pos);
    expect('}');
    levels.push_back(std::move(y));
    skip();
  } while (pos < text.size() && text[pos] == ',' && ++pos);
  expect(')');
  skip();
  if (pos != text.size()) fail("trailing characters");
  return HierarchicalModel(std::move(levels));
}

}  // namespace concord
