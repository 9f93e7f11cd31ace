// Copyright 2026 The congest-spanners Authors
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

// Node programs of the distributed phases. L below is the word width
// ceil(log2 n); every schema fits in 4L bits.
//
//   Clustering       CENTER [tag:2]  JOIN [tag:2]  UNCL [tag:2]
//   BFS distances    [root:L][dist:L]
//   BFS tree pass    [root:L][missing:L][parent:L]
//   Simple buy       [root:L]
//   Counter buy      [root:L][buy:1][bought:1][counter:L]
//   Report           [source:L][dist:L][missing:L][last:1]  or  [empty:1]
//   Center to member FLAG [0:1][in_a:1]  CHOICE [1:1][source:L]

#ifndef SPANNERS_PROGRAMS_HPP_
#define SPANNERS_PROGRAMS_HPP_

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <queue>
#include <random>
#include <span>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "spanners/congest.hpp"
#include "spanners/network.hpp"

namespace spanners::programs {

using congest::Envelope;
using congest::Message;
using congest::NodeContext;

class ClusterNode {
 public:
  ClusterNode(NodeState* st, double p_center) : st_(st), p_(p_center) {}

  /// A node already marked as a center (by a test) skips the coin.
  void init(NodeContext& ctx) {
    std::bernoulli_distribution coin(p_);
    if (coin(ctx.rng()) || st_->is_center) {
      st_->is_center = true;
      st_->center = ctx.id();
      ctx.broadcast(Message().add(kCenter, 2));
      ctx.halt();
    }
  }

  void step(NodeContext& ctx, std::span<const Envelope> inbox) {
    if (ctx.round() == 1 && !st_->is_center) {
      // Inboxes are sorted by sender, so the first CENTER is the smallest.
      const auto it = std::find_if(inbox.begin(), inbox.end(),
                                   [](const Envelope& e) { return e.msg[0] == kCenter; });
      if (it != inbox.end()) {
        st_->center = it->from;
        st_->center_port = it->port;
        st_->mark(it->port, Tag::kCluster);
        ctx.send_port(it->port, Message().add(kJoin, 2));
      } else {
        for (std::uint32_t p = 0; p < st_->h.size(); ++p) {
          st_->mark(p, Tag::kUnclustered);
        }
        ctx.broadcast(Message().add(kUnclustered, 2));
      }
    }
    for (const Envelope& env : inbox) {
      if (env.msg[0] == kJoin) {
        st_->member_ports.push_back(env.port);
        st_->mark(env.port, Tag::kCluster);
      } else if (env.msg[0] == kUnclustered) {
        st_->mark(env.port, Tag::kUnclustered);
      }
    }
    ctx.halt();
  }

 private:
  static constexpr std::uint64_t kCenter = 0;
  static constexpr std::uint64_t kJoin = 1;
  static constexpr std::uint64_t kUnclustered = 2;

  NodeState* st_;
  double p_;
};

/// First wave of the pipelined multi-source BFS: settles distances and
/// parents. Each round a node forwards the pending token with the smallest
/// (distance, root) to all neighbors; a token is re-sent if the distance
/// improves later.
class BfsDistanceNode {
 public:
  explicit BfsDistanceNode(NodeState* st) : st_(st) {}

  void init(NodeContext& ctx) {
    if (st_->bfs_root) {
      const auto idx = st_->slots.get_or_add(ctx.id());
      Slot& s = st_->slots[idx];
      s.dist = 0;
      s.parent = ctx.id();
      queue_.emplace(0, ctx.id(), idx);
    }
    send_next(ctx);
  }

  void step(NodeContext& ctx, std::span<const Envelope> inbox) {
    for (const Envelope& env : inbox) {
      const auto root = static_cast<NodeId>(env.msg[0]);
      const auto d = static_cast<std::uint32_t>(env.msg[1] + 1);
      const auto idx = st_->slots.get_or_add(root);
      Slot& s = st_->slots[idx];
      if (d < s.dist) {
        s.dist = d;
        s.parent = env.from;
        s.parent_port = env.port;
        queue_.emplace(d, root, idx);
      } else if (d == s.dist && env.from < s.parent) {
        s.parent = env.from;
        s.parent_port = env.port;
      }
    }
    send_next(ctx);
  }

 private:
  void send_next(NodeContext& ctx) {
    while (!queue_.empty()) {
      const auto [d, root, idx] = queue_.top();
      queue_.pop();
      if (st_->slots[idx].dist != d || sent_.size() > idx && sent_[idx] == d) {
        continue;
      }
      if (sent_.size() <= idx) sent_.resize(st_->slots.size(), kUnreached);
      sent_[idx] = d;
      const std::uint32_t w = ctx.word_bits();
      ctx.broadcast(Message().add(root, w).add(d, w));
      if (queue_.empty()) ctx.halt();
      return;
    }
    ctx.halt();
  }

  using Entry = std::tuple<std::uint32_t, NodeId, std::uint32_t>;
  NodeState* st_;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue_;
  std::vector<std::uint32_t> sent_;
};

/// Second wave: each tree's final token travels once down its tree,
/// carrying the missing-edge count and the sender's parent so that parents
/// learn their children. With tree_tag set, tree edges are added to H.
class BfsTreeNode {
 public:
  BfsTreeNode(NodeState* st, Tag tree_tag) : st_(st), tree_tag_(tree_tag) {}

  void init(NodeContext& ctx) {
    if (st_->bfs_root) {
      const auto idx = st_->slots.at(ctx.id());
      queue_.emplace(0, ctx.id(), idx);
    }
    send_next(ctx);
  }

  void step(NodeContext& ctx, std::span<const Envelope> inbox) {
    for (const Envelope& env : inbox) {
      const auto root = static_cast<NodeId>(env.msg[0]);
      const auto idx = st_->slots.at(root);
      Slot& s = st_->slots[idx];
      if (env.from == s.parent && s.dist != 0) {
        s.edge_missing = st_->h[env.port] == Tag::kNone;
        s.missing = static_cast<std::uint32_t>(env.msg[1]) + (s.edge_missing ? 1 : 0);
        s.parent_send_round = ctx.round() - 1;
        if (tree_tag_ != Tag::kNone) st_->mark(env.port, tree_tag_);
        queue_.emplace(s.dist, root, idx);
      }
      if (env.msg[2] == ctx.id() && tree_tag_ != Tag::kNone) {
        st_->mark(env.port, tree_tag_);
      }
    }
    send_next(ctx);
  }

 private:
  void send_next(NodeContext& ctx) {
    if (queue_.empty()) {
      ctx.halt();
      return;
    }
    const auto [d, root, idx] = queue_.top();
    queue_.pop();
    Slot& s = st_->slots[idx];
    s.send_round = ctx.round();
    const std::uint32_t w = ctx.word_bits();
    ctx.broadcast(Message().add(root, w).add(s.missing, w).add(s.parent, w));
    if (queue_.empty()) ctx.halt();
  }

  using Entry = std::tuple<std::uint32_t, NodeId, std::uint32_t>;
  NodeState* st_;
  Tag tree_tag_;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue_;
};

/// Backward pass over the trees of the last tree pass, replaying it in
/// reverse: a node sends to its parent in tree r at round R - t + 1, where t
/// is the round its parent forwarded r and R the last forwarding round of
/// the pass. Children therefore always act before their parents, and each
/// directed edge carries at most one message per round.
///
/// Simple mode buys the whole path from each initiator to the root.
/// Counter mode implements prefix-suffix buying: an initiator starts a
/// counter at ell_edges that pays for the nearest missing edges, and the
/// node whose missing count equals ell_edges turns the pass into a plain
/// buy up to the root.
class ReplayNode {
 public:
  enum class Mode { kSimple, kCounter };

  ReplayNode(NodeState* st, Mode mode, std::uint64_t last_round,
             std::uint32_t ell_edges, Tag tag)
      : st_(st), mode_(mode), last_round_(last_round), ell_(ell_edges), tag_(tag) {}

  void init(NodeContext& ctx) {
    state_.resize(st_->slots.size());
    for (NodeId root : st_->initiate) {
      const auto idx = st_->slots.at(root);
      if (st_->slots[idx].dist == 0) continue;
      State& s = state_[idx];
      s.held = true;
      if (mode_ == Mode::kSimple) {
        s.buy = true;
      } else {
        s.counter = std::max(s.counter, ell_);
      }
      schedule(ctx, idx);
    }
    act(ctx);
  }

  void step(NodeContext& ctx, std::span<const Envelope> inbox) {
    for (const Envelope& env : inbox) {
      const auto idx = st_->slots.at(static_cast<NodeId>(env.msg[0]));
      State& s = state_[idx];
      if (mode_ == Mode::kSimple) {
        st_->mark(env.port, tag_);
        s.buy = true;
      } else {
        if (env.msg[2] != 0) st_->mark(env.port, tag_);
        s.held = true;
        s.buy = s.buy || env.msg[1] != 0;
        s.counter = std::max(s.counter, static_cast<std::uint32_t>(env.msg[3]));
      }
      if (st_->slots[idx].dist != 0) schedule(ctx, idx);
    }
    act(ctx);
  }

 private:
  struct State {
    bool held = false;
    bool buy = false;
    bool scheduled = false;
    std::uint32_t counter = 0;
  };

  void schedule(NodeContext& ctx, std::uint32_t idx) {
    State& s = state_[idx];
    if (s.scheduled) return;
    s.scheduled = true;
    const std::uint64_t when = last_round_ - st_->slots[idx].parent_send_round + 1;
    if (when < ctx.round()) {
      throw std::logic_error("backward pass reached a node after its slot");
    }
    agenda_.emplace(when, idx);
  }

  void act(NodeContext& ctx) {
    while (!agenda_.empty() && agenda_.top().first == ctx.round()) {
      const std::uint32_t idx = agenda_.top().second;
      agenda_.pop();
      send(ctx, idx);
    }
    if (agenda_.empty()) ctx.halt();
  }

  void send(NodeContext& ctx, std::uint32_t idx) {
    const Slot& slot = st_->slots[idx];
    State& s = state_[idx];
    const std::uint32_t w = ctx.word_bits();
    if (mode_ == Mode::kSimple) {
      st_->mark(slot.parent_port, tag_);
      ctx.send_port(slot.parent_port, Message().add(slot.root, w));
      return;
    }
    if (s.held && slot.missing == ell_) s.buy = true;
    Message m;
    m.add(slot.root, w);
    if (s.buy) {
      m.add(1, 1).add(1, 1).add(0, w);
    } else if (s.counter > 0) {
      m.add(0, 1).add(1, 1).add(s.counter - (slot.edge_missing ? 1 : 0), w);
    } else if (slot.missing > ell_) {
      m.add(0, 1).add(0, 1).add(0, w);
    } else {
      return;
    }
    if (m[2] != 0) st_->mark(slot.parent_port, tag_);
    ctx.send_port(slot.parent_port, m);
  }

  NodeState* st_;
  Mode mode_;
  std::uint64_t last_round_;
  std::uint32_t ell_;
  Tag tag_;
  std::vector<State> state_;
  using Item = std::pair<std::uint64_t, std::uint32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> agenda_;
};

/// Members report, per BFS source, their distance and missing count to
/// their center (only qualifying entries, missing <= threshold). Each
/// collecting center picks, per source, the closest member (ties to the
/// smaller id) and tells that member to buy its path. In A-mode only
/// centers in A collect, and they first tell their members so.
class ReportNode {
 public:
  ReportNode(NodeState* st, double threshold, bool a_mode)
      : st_(st), threshold_(threshold), a_mode_(a_mode) {}

  void init(NodeContext& ctx) {
    if (st_->is_center) {
      if (a_mode_) {
        for (std::uint32_t p : st_->member_ports) {
          ctx.send_port(p, Message().add(kFlag, 1).add(st_->in_a ? 1 : 0, 1));
        }
        if (!st_->in_a) {
          ctx.halt();
          return;
        }
      }
      collecting_ = true;
      waiting_ = st_->member_ports.size();
      for (const Slot& s : st_->slots) {
        if (qualifies(s)) offer(s.root, s.dist, ctx.id());
      }
      if (waiting_ == 0) decide(ctx);
      flush(ctx);
      return;
    }
    if (!st_->clustered()) {
      ctx.halt();
      return;
    }
    if (!a_mode_) start_reports(ctx);
    flush(ctx);
  }

  void step(NodeContext& ctx, std::span<const Envelope> inbox) {
    for (const Envelope& env : inbox) {
      if (collecting_) {
        if (env.msg.size() == 1) {
          --waiting_;
        } else {
          offer(static_cast<NodeId>(env.msg[0]),
                static_cast<std::uint32_t>(env.msg[1]), env.from);
          if (env.msg[3] != 0) --waiting_;
        }
      } else if (env.msg[0] == kFlag) {
        if (env.msg[1] != 0) start_reports(ctx);
      } else {
        st_->initiate.push_back(static_cast<NodeId>(env.msg[1]));
      }
    }
    if (collecting_ && waiting_ == 0 && !decided_) decide(ctx);
    flush(ctx);
  }

 private:
  static constexpr std::uint64_t kFlag = 0;
  static constexpr std::uint64_t kChoice = 1;

  bool qualifies(const Slot& s) const {
    return s.dist != kUnreached && static_cast<double>(s.missing) <= threshold_;
  }

  void offer(NodeId source, std::uint32_t dist, NodeId member) {
    const auto cand = std::make_pair(dist, member);
    const auto [it, inserted] = best_.try_emplace(source, cand);
    if (!inserted && cand < it->second) it->second = cand;
  }

  void start_reports(NodeContext& ctx) {
    const std::uint32_t w = ctx.word_bits();
    std::vector<const Slot*> rows;
    for (const Slot& s : st_->slots) {
      if (qualifies(s)) rows.push_back(&s);
    }
    std::sort(rows.begin(), rows.end(),
              [](const Slot* a, const Slot* b) { return a->root < b->root; });
    auto& q = outbox_[st_->center_port];
    if (rows.empty()) {
      q.push_back(Message().add(0, 1));
      return;
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      q.push_back(Message()
                      .add(rows[i]->root, w)
                      .add(rows[i]->dist, w)
                      .add(rows[i]->missing, w)
                      .add(i + 1 == rows.size() ? 1 : 0, 1));
    }
  }

  void decide(NodeContext& ctx) {
    decided_ = true;
    const std::uint32_t w = ctx.word_bits();
    for (const auto& [source, cand] : best_) {
      if (cand.second == ctx.id()) {
        st_->initiate.push_back(source);
      } else {
        outbox_[ctx.port_of(cand.second)].push_back(
            Message().add(kChoice, 1).add(source, w));
      }
    }
  }

  void flush(NodeContext& ctx) {
    for (auto it = outbox_.begin(); it != outbox_.end();) {
      ctx.send_port(it->first, it->second.front());
      it->second.pop_front();
      it = it->second.empty() ? outbox_.erase(it) : std::next(it);
    }
    if (outbox_.empty()) ctx.halt();
  }

  NodeState* st_;
  double threshold_;
  bool a_mode_;
  bool collecting_ = false;
  bool decided_ = false;
  std::size_t waiting_ = 0;
  std::map<NodeId, std::pair<std::uint32_t, NodeId>> best_;
  std::map<std::uint32_t, std::deque<Message>> outbox_;
};

}  // namespace spanners::programs

#endif  // SPANNERS_PROGRAMS_HPP_
