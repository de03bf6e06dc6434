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

#include "wincc/game.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace wincc {

using json = nlohmann::json;

std::string_view to_string(PlayerId p) { return p == PlayerId::Ego ? "ego" : "alter"; }

std::string_view to_string(Condition c) {
  switch (c) {
    case Condition::Bipartition: return "Bipartition";
    case Condition::Deadlock: return "Deadlock";
    case Condition::AlphabetRestriction: return "AlphabetRestriction";
    case Condition::Determinacy: return "Determinacy";
    case Condition::InitialOwner: return "InitialOwner";
  }
  return "?";
}

bool ValidationResult::has(Condition c) const { return count(c) > 0; }

std::size_t ValidationResult::count(Condition c) const {
  return static_cast<std::size_t>(std::count_if(
      violations.begin(), violations.end(), [c](const Violation& v) { return v.condition == c; }));
}

std::string ValidationResult::summary() const {
  if (ok()) return "ok";
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += std::string(to_string(v.condition)) + ": " + v.message;
  }
  return out;
}

namespace {

std::string describe(const Transition& t) {
  return "(" + std::to_string(t.src) + ", " + std::to_string(t.action) + ", " +
         std::to_string(t.dst) + ")";
}

}  // namespace

ValidationResult validate(const GameDescription& d) {
  const std::size_t n = d.state_count();
  if (d.state_names.size() != n) throw UsageError("state_names and owners differ in length");
  for (const auto& t : d.transitions) {
    if (t.src >= n || t.dst >= n || t.action >= d.action_count())
      throw UsageError("transition " + describe(t) + " has an index out of range");
  }

  ValidationResult result;
  auto report = [&](Condition c, std::optional<StateId> s, std::optional<Transition> t,
                    std::string msg) {
    result.violations.push_back({c, s, t, std::move(msg)});
  };

  if (!d.initial || *d.initial >= n) {
    report(Condition::InitialOwner, std::nullopt, std::nullopt, "no initial state");
  } else if (d.owners[*d.initial] != PlayerId::Ego) {
    report(Condition::InitialOwner, d.initial, std::nullopt,
           "initial state '" + d.state_names[*d.initial] + "' is not owned by ego");
  }

  for (const auto& t : d.transitions) {
    if (d.owners[t.src] == d.owners[t.dst]) {
      report(Condition::Bipartition, t.src, t,
             "transition " + describe(t) + " connects two " +
                 std::string(to_string(d.owners[t.src])) + " states");
    }
    if (d.action_owner(t.action) != d.owners[t.src]) {
      report(Condition::AlphabetRestriction, t.src, t,
             "transition " + describe(t) + " leaves a " +
                 std::string(to_string(d.owners[t.src])) + " state with a " +
                 std::string(to_string(d.action_owner(t.action))) + " action");
    }
  }

  std::vector<Transition> sorted = d.transitions;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    const auto& prev = sorted[i - 1];
    const auto& cur = sorted[i];
    if (prev.src == cur.src && prev.action == cur.action &&
        (i < 2 || sorted[i - 2].src != cur.src || sorted[i - 2].action != cur.action)) {
      report(Condition::Determinacy, cur.src, cur,
             "action " + std::to_string(cur.action) + " from state " + std::to_string(cur.src) +
                 " has several targets");
    }
  }

  std::vector<bool> has_out(n, false);
  for (const auto& t : d.transitions) has_out[t.src] = true;
  for (StateId s = 0; s < n; ++s) {
    if (!has_out[s]) {
      report(Condition::Deadlock, s, std::nullopt,
             "state '" + d.state_names[s] + "' has no outgoing transition");
    }
  }
  return result;
}

GameGraph::GameGraph(GameDescription d) : desc_(std::move(d)) {
  auto result = validate(desc_);
  if (!result.ok()) throw ValidationError(std::move(result));

  auto& ts = desc_.transitions;
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

  offsets_.assign(state_count() + 1, 0);
  moves_.reserve(ts.size());
  for (const auto& t : ts) {
    ++offsets_[t.src + 1];
    moves_.push_back({t.action, t.dst});
  }
  for (std::size_t s = 0; s < state_count(); ++s) {
    max_fan_out_ = std::max(max_fan_out_, offsets_[s + 1]);
    offsets_[s + 1] += offsets_[s];
  }
}

const std::string& GameGraph::action_name(ActionId a) const {
  const auto ego = desc_.ego_actions.size();
  return a < ego ? desc_.ego_actions[a] : desc_.alter_actions[a - ego];
}

std::optional<StateId> GameGraph::find_state(std::string_view name) const {
  auto it = std::find(desc_.state_names.begin(), desc_.state_names.end(), name);
  if (it == desc_.state_names.end()) return std::nullopt;
  return static_cast<StateId>(it - desc_.state_names.begin());
}

std::optional<ActionId> GameGraph::find_action(std::string_view name) const {
  for (ActionId a = 0; a < action_count(); ++a) {
    if (action_name(a) == name) return a;
  }
  return std::nullopt;
}

std::span<const Move> GameGraph::successors(StateId s) const {
  if (s >= state_count()) throw UsageError("unknown state id " + std::to_string(s));
  return {moves_.data() + offsets_[s], moves_.data() + offsets_[s + 1]};
}

std::optional<StateId> GameGraph::step(StateId s, ActionId a) const {
  for (const auto& m : successors(s)) {
    if (m.action == a) return m.dst;
  }
  return std::nullopt;
}

bool GameGraph::operator==(const GameGraph& other) const {
  const auto& a = desc_;
  const auto& b = other.desc_;
  return a.state_names == b.state_names && a.owners == b.owners && a.initial == b.initial &&
         a.ego_actions == b.ego_actions && a.alter_actions == b.alter_actions &&
         a.transitions == b.transitions;
}

namespace {

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

const json& require(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(std::string("missing key '") + key + "'");
  return *it;
}

std::string require_string(const json& v, const std::string& what) {
  if (!v.is_string()) throw ParseError(what + " must be a string");
  return v.get<std::string>();
}

}  // namespace

GameGraph parse_game(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    auto [line, column] = line_column(text, e.byte);
    throw ParseError("malformed JSON at line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + e.what(),
                     line, column);
  }
  if (!doc.is_object()) throw ParseError("game document must be a JSON object");

  GameDescription d;
  std::unordered_map<std::string, StateId> state_ids;
  const auto& states = require(doc, "states");
  if (!states.is_array()) throw ParseError("'states' must be an array");
  for (const auto& st : states) {
    if (!st.is_object()) throw ParseError("state entries must be objects");
    auto name = require_string(require(st, "name"), "state name");
    auto owner = require_string(require(st, "owner"), "state owner");
    PlayerId p;
    if (owner == "ego") {
      p = PlayerId::Ego;
    } else if (owner == "alter") {
      p = PlayerId::Alter;
    } else {
      throw ParseError("state '" + name + "' has unknown owner '" + owner + "'");
    }
    if (!state_ids.emplace(name, static_cast<StateId>(d.owners.size())).second)
      throw ParseError("duplicate state name '" + name + "'");
    d.state_names.push_back(std::move(name));
    d.owners.push_back(p);
  }

  std::unordered_map<std::string, ActionId> action_ids;
  auto read_actions = [&](const char* key, std::vector<std::string>& out) {
    const auto& arr = require(doc, key);
    if (!arr.is_array()) throw ParseError(std::string("'") + key + "' must be an array");
    for (const auto& a : arr) out.push_back(require_string(a, "action name"));
  };
  read_actions("ego_actions", d.ego_actions);
  read_actions("alter_actions", d.alter_actions);
  for (ActionId a = 0; a < d.action_count(); ++a) {
    const auto& name =
        a < d.ego_actions.size() ? d.ego_actions[a] : d.alter_actions[a - d.ego_actions.size()];
    if (!action_ids.emplace(name, a).second)
      throw ParseError("action '" + name + "' is declared twice");
  }

  auto initial = require_string(require(doc, "initial"), "'initial'");
  if (auto it = state_ids.find(initial); it != state_ids.end()) d.initial = it->second;

  const auto& ts = require(doc, "transitions");
  if (!ts.is_array()) throw ParseError("'transitions' must be an array");
  for (const auto& t : ts) {
    if (!t.is_array() || t.size() != 3) throw ParseError("transitions must be [src, action, dst]");
    auto src = require_string(t[0], "transition source");
    auto act = require_string(t[1], "transition action");
    auto dst = require_string(t[2], "transition target");
    auto s = state_ids.find(src);
    auto a = action_ids.find(act);
    auto e = state_ids.find(dst);
    if (s == state_ids.end()) throw ParseError("undeclared state '" + src + "'");
    if (a == action_ids.end()) throw ParseError("undeclared action '" + act + "'");
    if (e == state_ids.end()) throw ParseError("undeclared state '" + dst + "'");
    d.transitions.push_back({s->second, a->second, e->second});
  }
  return GameGraph(std::move(d));
}

GameGraph load_game(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open game file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_game(buf.str());
}

std::string serialize_game(const GameGraph& graph) {
  const auto& d = graph.description();
  json doc;
  doc["states"] = json::array();
  for (StateId s = 0; s < d.state_count(); ++s) {
    doc["states"].push_back({{"name", d.state_names[s]}, {"owner", to_string(d.owners[s])}});
  }
  doc["initial"] = d.state_names[*d.initial];
  doc["ego_actions"] = d.ego_actions;
  doc["alter_actions"] = d.alter_actions;
  doc["transitions"] = json::array();
  for (const auto& t : d.transitions) {
    doc["transitions"].push_back(
        {d.state_names[t.src], graph.action_name(t.action), d.state_names[t.dst]});
  }
  return doc.dump(1) + "\n";
}

}  // namespace wincc
