#include "lud/plugging.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace lud {

std::string to_display(const Plugging& p) {
  if (p.assignment.empty()) return "(empty)";
  std::ostringstream out;
  bool first = true;
  for (const auto& [h, l] : p.assignment) {
    if (!first) out << ' ';
    first = false;
    out << h.name << "->" << l.name;
  }
  return out.str();
}

namespace {

void check_plugging_shape(const LudRepr& u, const Plugging& p) {
  auto free = free_labels(u);
  if (p.assignment.size() != u.holes.size())
    throw LudError(ErrorKind::invalid_plugging, "plugging is not total over the holes");
  std::set<Label> seen;
  for (const auto& [h, l] : p.assignment) {
    if (!u.holes.count(h))
      throw LudError(ErrorKind::invalid_plugging, "unknown hole " + h.name);
    if (!free.count(l))
      throw LudError(ErrorKind::invalid_plugging, l.name + " is not a free label");
    if (!seen.insert(l).second)
      throw LudError(ErrorKind::invalid_plugging, "label " + l.name + " plugged twice");
  }
}

bool admissible_unchecked(const LudRepr& u, const std::map<Hole, Label>& assignment) {
  auto order = subordination_closure(u, &assignment);
  if (!order.antisymmetric()) return false;
  for (const auto& k : u.constraints) {
    if (auto* lt = std::get_if<LtConstraint>(&k)) {
      auto b = node_ref(lt->below);
      auto a = node_ref(lt->above);
      if (!b || !a) continue;
      if (!order.leq(*b, *a) || order.leq(*a, *b)) return false;
    } else if (auto* leq = std::get_if<LeqConstraint>(&k)) {
      auto b = node_ref(leq->below);
      auto a = node_ref(leq->above);
      if (!b || !a) continue;
      if (!order.leq(*b, *a)) return false;
    }
  }
  return true;
}

std::optional<Diagnostic> balance_diagnostic(const LudRepr& u) {
  if (!is_closed(u)) {
    return Diagnostic{"open-representation",
                      "representation still has params or a pending subcat"};
  }
  // A hole-free representation always has exactly the empty plugging; the
  // imbalance diagnostic is reserved for genuinely unpluggable structure.
  if (u.holes.empty()) return std::nullopt;
  auto free = free_labels(u);
  if (free.size() != u.holes.size()) {
    return Diagnostic{"cardinality-mismatch",
                      std::to_string(u.holes.size()) + " hole(s) vs " +
                          std::to_string(free.size()) + " free label(s)"};
  }
  return std::nullopt;
}

}  // namespace

bool is_admissible(const LudRepr& u, const Plugging& p) {
  check_plugging_shape(u, p);
  return admissible_unchecked(u, p.assignment);
}

PluggingResult enumerate_pluggings(const LudRepr& u) {
  PluggingResult res;
  if (auto d = balance_diagnostic(u)) {
    res.diagnostics.push_back(*d);
    return res;
  }
  std::vector<Hole> holes(u.holes.begin(), u.holes.end());
  auto free = free_labels(u);
  std::vector<Label> labels(free.begin(), free.end());

  // Backtracking over holes in id order, candidate labels in id order; each
  // extension is pruned by an incremental cycle check. The brute-force oracle
  // defines correctness.
  std::map<Hole, Label> current;
  std::vector<bool> used(labels.size(), false);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == holes.size()) {
      if (admissible_unchecked(u, current)) res.pluggings.push_back(Plugging{current});
      return;
    }
    for (std::size_t j = 0; j < labels.size(); ++j) {
      if (used[j]) continue;
      current.emplace(holes[i], labels[j]);
      if (subordination_closure(u, &current).antisymmetric()) {
        used[j] = true;
        rec(i + 1);
        used[j] = false;
      }
      current.erase(holes[i]);
    }
  };
  rec(0);
  return res;
}

PluggingResult brute_force_pluggings(const LudRepr& u) {
  if (u.holes.size() > 8)
    throw LudError(ErrorKind::refused_too_large,
                   "oracle refuses more than 8 holes (" +
                       std::to_string(u.holes.size()) + " given)");
  PluggingResult res;
  if (auto d = balance_diagnostic(u)) {
    res.diagnostics.push_back(*d);
    return res;
  }
  if (u.holes.empty()) {
    if (admissible_unchecked(u, {})) res.pluggings.push_back(Plugging{});
    return res;
  }
  std::vector<Hole> holes(u.holes.begin(), u.holes.end());
  auto free = free_labels(u);
  std::vector<Label> labels(free.begin(), free.end());
  std::sort(labels.begin(), labels.end());
  do {
    std::map<Hole, Label> assignment;
    for (std::size_t i = 0; i < holes.size(); ++i) assignment.emplace(holes[i], labels[i]);
    if (admissible_unchecked(u, assignment)) res.pluggings.push_back(Plugging{assignment});
  } while (std::next_permutation(labels.begin(), labels.end()));
  std::sort(res.pluggings.begin(), res.pluggings.end());
  return res;
}

std::vector<Plugging> filter_mood(const LudRepr& u, const Label& mood,
                                  const std::vector<Plugging>& ps) {
  if (!u.conditions.count(mood))
    throw LudError(ErrorKind::unknown_label, "no condition labeled " + mood.name);
  std::vector<Plugging> out;
  for (const auto& p : ps) {
    auto order = subordination_closure(u, &p.assignment);
    bool maximal = true;
    for (const auto& [l, c] : u.conditions) {
      if (l == mood) continue;
      if (order.leq(NodeRef{mood}, NodeRef{l}) && !order.leq(NodeRef{l}, NodeRef{mood})) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.push_back(p);
  }
  return out;
}

}  // namespace lud
