// Copyright 2026 The wincc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wincc/situation_graph.hpp"

#include <sstream>

namespace wincc {

namespace {

using u128 = unsigned __int128;

u128 widen(const SituationKey& k) { return (static_cast<u128>(k.hi) << 64) | k.lo; }

void narrow(SituationKey& k, u128 v) {
  k.lo = static_cast<std::uint64_t>(v);
  k.hi = static_cast<std::uint64_t>(v >> 64);
}

constexpr std::uint64_t entry_mask(unsigned length) {
  return length >= 32 ? ~0ULL : (1ULL << (2 * length)) - 1;
}

std::uint64_t mix(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

// Shifts every history of a packed key in one pass.
class Shifter {
 public:
  Shifter(const ConstraintSet& cs, std::size_t ego_actions) {
    u128 total = 0;
    u128 lowest = 0;
    unsigned offset = 0;
    for (std::size_t i = 0; i < cs.size(); ++i) {
      total |= static_cast<u128>(entry_mask(cs[i].l)) << offset;
      lowest |= static_cast<u128>(3) << offset;
      offset += 2 * cs[i].l;
    }
    keep_ = total & ~lowest;
    inserts_.resize(ego_actions, 0);
    for (ActionId a = 0; a < ego_actions; ++a) {
      offset = 0;
      for (std::size_t i = 0; i < cs.size(); ++i) {
        const auto e = a == cs[i].action ? Entry::Hit : Entry::Miss;
        inserts_[a] |= static_cast<u128>(e) << offset;
        offset += 2 * cs[i].l;
      }
    }
  }

  SituationKey apply(const SituationKey& k, ActionId a, StateId dst) const {
    SituationKey out{dst, 0, 0};
    narrow(out, ((widen(k) << 2) & keep_) | inserts_[a]);
    return out;
  }

 private:
  u128 keep_ = 0;
  std::vector<u128> inserts_;
};

}  // namespace

std::string Situation::label(const GameGraph& graph) const {
  std::string out = graph.state_name(state);
  for (const auto& h : histories) {
    out += ",(";
    for (unsigned i = 0; i < h.length(); ++i) {
      if (i > 0) out += ',';
      switch (h[i]) {
        case Entry::Hit: out += '1'; break;
        case Entry::Miss: out += '0'; break;
        case Entry::None: out += '-'; break;
      }
    }
    out += ')';
  }
  return out;
}

std::size_t SituationHash::operator()(const Situation& s) const {
  std::uint64_t h = mix(s.state + 0x9e3779b97f4a7c15ULL);
  for (const auto& hist : s.histories) h = mix(h ^ hist.bits() ^ (std::uint64_t{hist.length()} << 58));
  return static_cast<std::size_t>(h);
}

std::size_t SituationKeyHash::operator()(const SituationKey& k) const {
  return static_cast<std::size_t>(mix(mix(k.state ^ mix(k.lo)) ^ k.hi));
}

HistoryLayout::HistoryLayout(const ConstraintSet& cs) {
  unsigned offset = 0;
  for (const auto& c : cs) {
    offsets_.push_back(offset);
    lengths_.push_back(c.l);
    offset += 2 * c.l;
  }
  if (offset > 128) throw UsageError("combined history length exceeds 64 entries");
}

std::uint64_t HistoryLayout::extract(const SituationKey& key, std::size_t i) const {
  return static_cast<std::uint64_t>(widen(key) >> offsets_[i]) & entry_mask(lengths_[i]);
}

void HistoryLayout::insert(SituationKey& key, std::size_t i, std::uint64_t bits) const {
  const u128 mask = static_cast<u128>(entry_mask(lengths_[i])) << offsets_[i];
  narrow(key, (widen(key) & ~mask) | ((static_cast<u128>(bits) << offsets_[i]) & mask));
}

SituationKey HistoryLayout::pack(const Situation& s) const {
  if (s.histories.size() != lengths_.size())
    throw UsageError("situation has the wrong number of histories");
  SituationKey key{s.state, 0, 0};
  for (std::size_t i = 0; i < lengths_.size(); ++i) {
    if (s.histories[i].length() != lengths_[i])
      throw UsageError("situation history length does not match the layout");
    insert(key, i, s.histories[i].bits());
  }
  return key;
}

Situation HistoryLayout::unpack(const SituationKey& key) const {
  Situation s{key.state, {}};
  s.histories.reserve(lengths_.size());
  for (std::size_t i = 0; i < lengths_.size(); ++i) {
    s.histories.push_back(History::from_bits(lengths_[i], extract(key, i)));
  }
  return s;
}

Situation related(const Situation& sit, std::size_t iterated_index) {
  if (iterated_index >= sit.histories.size()) throw UsageError("iterated index out of range");
  const auto& h = sit.histories[iterated_index];
  if (h.length() < 2) throw UsageError("related situation needs an iterated history of length >= 2");
  Situation out = sit;
  out.histories[iterated_index] = h.truncated(h.length() - 1);
  return out;
}

Situation advance(const GameGraph& graph, const ConstraintSet& cs, const Situation& sit,
                  const Move& move) {
  Situation next{move.dst, sit.histories};
  if (graph.owner(sit.state) == PlayerId::Ego) {
    for (std::size_t i = 0; i < cs.size(); ++i) {
      next.histories[i] = history_shift(sit.histories[i], cs[i], move.action);
    }
  }
  return next;
}

PruneContext PruneContext::from_graph(const SituationGraph& previous,
                                      std::span<const SituationId> marked,
                                      std::size_t iterated_index, MarkMeaning meaning) {
  PruneContext ctx(iterated_index, meaning, previous.layout());
  for (auto id : marked) ctx.add_key(previous.key(id));
  return ctx;
}

std::pair<SituationId, bool> SituationGraph::intern(const SituationKey& k) {
  if ((keys_.size() + 1) * 2 > slots_.size()) grow();
  const std::size_t mask = slots_.size() - 1;
  std::size_t pos = SituationKeyHash{}(k) & mask;
  while (slots_[pos] != 0) {
    const SituationId id = slots_[pos] - 1;
    if (keys_[id] == k) return {id, false};
    pos = (pos + 1) & mask;
  }
  const auto id = static_cast<SituationId>(keys_.size());
  slots_[pos] = id + 1;
  keys_.push_back(k);
  return {id, true};
}

void SituationGraph::grow() {
  const std::size_t capacity = slots_.empty() ? 1024 : slots_.size() * 2;
  slots_.assign(capacity, 0);
  const std::size_t mask = capacity - 1;
  for (SituationId id = 0; id < keys_.size(); ++id) {
    std::size_t pos = SituationKeyHash{}(keys_[id]) & mask;
    while (slots_[pos] != 0) pos = (pos + 1) & mask;
    slots_[pos] = id + 1;
  }
}

std::optional<SituationId> SituationGraph::find_key(const SituationKey& k) const {
  if (slots_.empty()) return std::nullopt;
  const std::size_t mask = slots_.size() - 1;
  std::size_t pos = SituationKeyHash{}(k) & mask;
  while (slots_[pos] != 0) {
    const SituationId id = slots_[pos] - 1;
    if (keys_[id] == k) return id;
    pos = (pos + 1) & mask;
  }
  return std::nullopt;
}

std::optional<SituationId> SituationGraph::find(const Situation& s) const {
  if (s.histories.size() != layout_.size()) return std::nullopt;
  for (std::size_t i = 0; i < layout_.size(); ++i) {
    if (s.histories[i].length() != layout_.length(i)) return std::nullopt;
  }
  return find_key(layout_.pack(s));
}

std::vector<SituationId> SituationGraph::violating() const {
  std::vector<SituationId> out;
  for (SituationId id = 0; id < size(); ++id) {
    if (is_violating(id)) out.push_back(id);
  }
  return out;
}

std::vector<SituationId> SituationGraph::winnable_marks() const {
  std::vector<SituationId> out;
  for (SituationId id = 0; id < size(); ++id) {
    if (is_winnable_mark(id)) out.push_back(id);
  }
  return out;
}

std::size_t SituationGraph::count(SituationStatus s) const {
  std::size_t n = 0;
  for (auto st : status_) n += st == s ? 1 : 0;
  return n;
}

SituationGraph build(const GameGraph& graph, const ConstraintSet& cs,
                     const std::optional<PruneContext>& prune, const BuildOptions& options) {
  cs.check(graph);
  SituationGraph sg;
  sg.constraints_ = cs;
  sg.layout_ = HistoryLayout(cs);
  const auto& layout = sg.layout_;

  if (prune) {
    const auto idx = prune->iterated_index();
    const auto& prev = prune->previous_layout();
    if (idx >= cs.size() || prev.size() != cs.size())
      throw UsageError("prune context does not match the constraint set");
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const unsigned expected = i == idx ? cs[i].l - 1 : cs[i].l;
      if (prev.length(i) != expected)
        throw UsageError("prune context history lengths must be one shorter on the iterated constraint");
    }
  }

  const Shifter shifter(cs, graph.ego_action_count());

  auto classify = [&](const SituationKey& key) {
    for (std::size_t i = 0; i < cs.size(); ++i) {
      if (!history_satisfies(History::from_bits(cs[i].l, layout.extract(key, i)), cs[i]))
        return SituationStatus::Violating;
    }
    if (prune) {
      const auto& prev = prune->previous_layout();
      SituationKey rel{key.state, 0, 0};
      for (std::size_t i = 0; i < cs.size(); ++i) {
        prev.insert(rel, i, layout.extract(key, i) & entry_mask(prev.length(i)));
      }
      if (prune->contains_key(rel)) {
        return prune->meaning() == MarkMeaning::Winnable ? SituationStatus::WinnableMark
                                                         : SituationStatus::LosingMark;
      }
    }
    return SituationStatus::Expanded;
  };

  auto add = [&](const SituationKey& key) {
    auto [id, inserted] = sg.intern(key);
    if (inserted) {
      if (options.max_situations != 0 && sg.keys_.size() > options.max_situations)
        throw BudgetError("situation budget of " + std::to_string(options.max_situations) +
                          " exceeded");
      sg.owners_.push_back(graph.owner(key.state));
      sg.status_.push_back(classify(key));
    }
    return id;
  };

  add(SituationKey{graph.initial(), 0, 0});
  for (SituationId id = 0; id < sg.keys_.size(); ++id) {
    sg.edge_begin_.push_back(sg.edges_.size());
    if (sg.status_[id] != SituationStatus::Expanded) continue;
    const SituationKey key = sg.keys_[id];
    const bool ego = sg.owners_[id] == PlayerId::Ego;
    for (const Move& m : graph.successors(key.state)) {
      const SituationKey next = ego ? shifter.apply(key, m.action, m.dst)
                                    : SituationKey{m.dst, key.lo, key.hi};
      sg.edges_.push_back({m.action, add(next)});
    }
    if (options.progress && (id & 0xFFFF) == 0) options.progress(sg.keys_.size(), sg.keys_.size() - id);
  }
  sg.edge_begin_.push_back(sg.edges_.size());
  return sg;
}

std::string to_dot(const SituationGraph& sg, const GameGraph& graph,
                   std::span<const SituationId> highlighted) {
  std::vector<bool> gray(sg.size(), false);
  for (auto id : highlighted) {
    if (id < sg.size()) gray[id] = true;
  }
  std::ostringstream os;
  os << "digraph situations {\n"
     << "  rankdir=LR;\n"
     << "  node [fontname=\"Helvetica\"];\n"
     << "  init [shape=point];\n"
     << "  init -> s" << sg.initial() << ";\n";
  for (SituationId id = 0; id < sg.size(); ++id) {
    os << "  s" << id << " [label=\"" << sg.situation(id).label(graph) << "\", shape="
       << (sg.owner(id) == PlayerId::Ego ? "circle" : "diamond");
    if (gray[id] || sg.is_winnable_mark(id)) os << ", style=filled, fillcolor=gray80";
    if (sg.is_violating(id)) os << ", color=red";
    os << "];\n";
  }
  for (SituationId id = 0; id < sg.size(); ++id) {
    for (const auto& e : sg.out(id)) {
      os << "  s" << id << " -> s" << e.dst << " [label=\"" << graph.action_name(e.action)
         << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

std::string dump_situations(const SituationGraph& sg, const GameGraph& graph) {
  std::string out;
  for (SituationId id = 0; id < sg.size(); ++id) {
    const auto sit = sg.situation(id);
    out += graph.state_name(sit.state);
    for (const auto& h : sit.histories) {
      out += '|';
      out += h.to_string();
    }
    out += '\n';
  }
  return out;
}

}  // namespace wincc
