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

// Synchronous CONGEST executor.
//
// A simulation owns one program object per node. Programs interact with the
// world only through NodeContext: their own id, their sorted neighbor list,
// a private RNG stream, and the messages delivered to them. A message sent in
// round t is delivered in round t+1; inboxes are ordered by sender id. Every
// directed edge carries at most one message per round, and every message
// must fit in bandwidth_multiplier * ceil(log2 n) bits.

#ifndef SPANNERS_CONGEST_HPP_
#define SPANNERS_CONGEST_HPP_

#include <algorithm>
#include <array>
#include <bit>
#include <concepts>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "spanners/graph.hpp"

namespace spanners::congest {

/// ceil(log2 n), at least 1: the width of one node id or distance.
inline std::uint32_t word_bits(std::size_t n) {
  if (n <= 2) return 1;
  return static_cast<std::uint32_t>(std::bit_width(n - 1));
}

/// Bits needed to write value, at least 1.
inline std::uint32_t bits_for(std::uint64_t value) {
  return std::max<std::uint32_t>(1, std::bit_width(value));
}

/// A short sequence of unsigned fields, each with a declared width.
class Message {
 public:
  static constexpr std::size_t kMaxFields = 4;

  Message() = default;

  Message& add(std::uint64_t value, std::uint32_t width) {
    if (size_ == kMaxFields) {
      throw std::length_error("message holds at most 4 fields");
    }
    if (width == 0 || width > 64 || (width < 64 && (value >> width) != 0)) {
      throw std::invalid_argument("value " + std::to_string(value) +
                                  " does not fit in " + std::to_string(width) +
                                  " bits");
    }
    values_[size_] = value;
    widths_[size_] = static_cast<std::uint8_t>(width);
    ++size_;
    bits_ += width;
    return *this;
  }

  std::uint64_t operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return size_; }
  std::uint32_t bits() const { return bits_; }

 private:
  std::array<std::uint64_t, kMaxFields> values_{};
  std::array<std::uint8_t, kMaxFields> widths_{};
  std::uint8_t size_ = 0;
  std::uint32_t bits_ = 0;
};

struct Envelope {
  NodeId from = 0;
  /// Index of the sender in the receiver's neighbor list.
  std::uint32_t port = 0;
  Message msg;
};

struct SimConfig {
  std::uint32_t bandwidth_multiplier = 4;
  /// 0 selects 64 * (n + D) with D bounded by n - 1.
  std::uint64_t max_rounds = 0;
  std::uint64_t seed = 1;
  bool trace = false;
};

struct RoundStats {
  std::uint64_t rounds = 0;
  std::uint64_t messages_sent = 0;
  std::uint64_t total_bits = 0;
  std::uint32_t max_message_bits = 0;

  RoundStats& operator+=(const RoundStats& other) {
    rounds += other.rounds;
    messages_sent += other.messages_sent;
    total_bits += other.total_bits;
    max_message_bits = std::max(max_message_bits, other.max_message_bits);
    return *this;
  }
  friend bool operator==(const RoundStats&, const RoundStats&) = default;
};

struct TraceRecord {
  std::uint64_t round = 0;  // delivery round
  NodeId src = 0;
  NodeId dst = 0;
  std::uint32_t bits = 0;

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

/// Per-message delivery log.
class Trace {
 public:
  void add(TraceRecord record) { records_.push_back(record); }

  /// Appends other with its rounds shifted by offset (used when phases run
  /// back to back).
  void append(const Trace& other, std::uint64_t offset) {
    for (TraceRecord r : other.records_) {
      r.round += offset;
      records_.push_back(r);
    }
  }

  const std::vector<TraceRecord>& records() const { return records_; }

  /// Bits per undirected edge, summed over both directions.
  std::vector<std::pair<Edge, std::uint64_t>> edge_bits() const {
    std::vector<std::pair<Edge, std::uint64_t>> totals;
    for (const auto& r : records_) totals.emplace_back(Edge(r.src, r.dst), r.bits);
    std::sort(totals.begin(), totals.end());
    std::vector<std::pair<Edge, std::uint64_t>> merged;
    for (const auto& [e, b] : totals) {
      if (!merged.empty() && merged.back().first == e) {
        merged.back().second += b;
      } else {
        merged.emplace_back(e, b);
      }
    }
    return merged;
  }

  void write_csv(std::ostream& out) const {
    out << "round,src,dst,bits\n";
    for (const auto& r : records_) {
      out << r.round << ',' << r.src << ',' << r.dst << ',' << r.bits << '\n';
    }
  }

  friend bool operator==(const Trace&, const Trace&) = default;

 private:
  std::vector<TraceRecord> records_;
};

class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BandwidthExceeded : public SimulationError {
 public:
  BandwidthExceeded(NodeId node, std::uint64_t round, std::uint32_t bits,
                    std::uint32_t limit)
      : SimulationError("node " + std::to_string(node) + " sent a " +
                        std::to_string(bits) + "-bit message in round " +
                        std::to_string(round) + " (limit " +
                        std::to_string(limit) + ")"),
        node(node),
        round(round),
        bits(bits),
        limit(limit) {}

  NodeId node;
  std::uint64_t round;
  std::uint32_t bits;
  std::uint32_t limit;
};

/// A second message on the same directed edge within one round.
class EdgeCongested : public SimulationError {
 public:
  EdgeCongested(NodeId node, NodeId to, std::uint64_t round)
      : SimulationError("node " + std::to_string(node) +
                        " sent twice to " + std::to_string(to) +
                        " in round " + std::to_string(round)),
        node(node),
        to(to),
        round(round) {}

  NodeId node;
  NodeId to;
  std::uint64_t round;
};

class SimulationTimeout : public SimulationError {
 public:
  explicit SimulationTimeout(RoundStats partial)
      : SimulationError("simulation exceeded " +
                        std::to_string(partial.rounds) + " rounds"),
        partial(partial) {}

  RoundStats partial;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of node v's private stream under master seed.
inline std::uint64_t node_seed(std::uint64_t master, NodeId v) {
  return splitmix64(master ^ splitmix64(0x5bd1e995ULL + v));
}

namespace detail {
class Engine;
}  // namespace detail

/// Everything a node program may observe or do.
class NodeContext {
 public:
  NodeId id() const { return id_; }
  std::span<const NodeId> neighbors() const;
  std::size_t degree() const { return neighbors().size(); }
  std::uint64_t round() const;
  /// Width of one id/distance field.
  std::uint32_t word_bits() const;
  std::uint32_t bandwidth() const;
  std::mt19937_64& rng();

  /// Port of a neighbor; throws std::out_of_range for a non-neighbor.
  std::uint32_t port_of(NodeId neighbor) const;
  void send(NodeId to, const Message& msg) { send_port(port_of(to), msg); }
  void send_port(std::uint32_t port, const Message& msg);
  void broadcast(const Message& msg);
  void halt();

 private:
  friend class detail::Engine;
  NodeContext(detail::Engine* engine, NodeId id) : engine_(engine), id_(id) {}

  detail::Engine* engine_;
  NodeId id_;
};

template <class Node>
concept NodeProgram = requires(Node& node, NodeContext& ctx,
                               std::span<const Envelope> inbox) {
  node.init(ctx);
  node.step(ctx, inbox);
};

namespace detail {

class Engine {
 public:
  Engine(const Graph& g, const SimConfig& cfg)
      : g_(g),
        cfg_(cfg),
        n_(g.node_count()),
        word_bits_(congest::word_bits(g.node_count())),
        bandwidth_(cfg.bandwidth_multiplier * word_bits_),
        offsets_(n_ + 1, 0),
        halted_(n_, 0),
        inbox_(n_),
        next_(n_),
        rngs_(n_) {
    if (cfg.bandwidth_multiplier < 1) {
      throw std::invalid_argument("bandwidth multiplier must be at least 1");
    }
    max_rounds_ = cfg.max_rounds != 0 ? cfg.max_rounds
                                      : 64 * (2 * static_cast<std::uint64_t>(n_));
    for (NodeId v = 0; v < n_; ++v) {
      offsets_[v + 1] = offsets_[v] + g.degree(v);
    }
    reverse_port_.resize(offsets_[n_]);
    last_sent_.assign(offsets_[n_], kNever);
    for (NodeId v = 0; v < n_; ++v) {
      const auto nbrs = g.neighbors(v);
      for (std::uint32_t i = 0; i < nbrs.size(); ++i) {
        const auto back = g.neighbors(nbrs[i]);
        reverse_port_[offsets_[v] + i] = static_cast<std::uint32_t>(
            std::lower_bound(back.begin(), back.end(), v) - back.begin());
      }
    }
    if (cfg.trace) trace_.emplace();
  }

  template <NodeProgram Node>
  void run(std::vector<Node>& nodes) {
    if (nodes.size() != n_) {
      throw std::invalid_argument("one program per node required");
    }
    round_ = 0;
    for (NodeId v = 0; v < n_; ++v) {
      NodeContext ctx(this, v);
      nodes[v].init(ctx);
    }
    flip();
    while (halted_count_ < n_ || pending_ > 0) {
      ++round_;
      if (round_ > max_rounds_) {
        stats_.rounds = round_ - 1;
        throw SimulationTimeout(stats_);
      }
      pending_ = 0;
      for (NodeId v = 0; v < n_; ++v) {
        if (halted_[v] && inbox_[v].empty()) continue;
        if (halted_[v]) {
          halted_[v] = 0;
          --halted_count_;
        }
        NodeContext ctx(this, v);
        nodes[v].step(ctx, std::span<const Envelope>(inbox_[v]));
      }
      stats_.rounds = round_;
      flip();
    }
  }

  const RoundStats& stats() const { return stats_; }
  std::optional<Trace>& trace() { return trace_; }

 private:
  friend class spanners::congest::NodeContext;
  static constexpr std::uint64_t kNever = ~std::uint64_t{0};

  void flip() {
    for (NodeId v = 0; v < n_; ++v) inbox_[v].clear();
    std::swap(inbox_, next_);
    pending_ = 0;
    for (NodeId v = 0; v < n_; ++v) pending_ += inbox_[v].size();
  }

  void send(NodeId from, std::uint32_t port, const Message& msg) {
    const std::size_t edge = offsets_[from] + port;
    if (port >= offsets_[from + 1] - offsets_[from]) {
      throw std::out_of_range("node " + std::to_string(from) +
                              " has no port " + std::to_string(port));
    }
    const NodeId to = g_.neighbors(from)[port];
    if (msg.bits() > bandwidth_) {
      throw BandwidthExceeded(from, round_, msg.bits(), bandwidth_);
    }
    if (last_sent_[edge] == round_) throw EdgeCongested(from, to, round_);
    last_sent_[edge] = round_;
    next_[to].push_back(Envelope{from, reverse_port_[edge], msg});
    ++stats_.messages_sent;
    stats_.total_bits += msg.bits();
    stats_.max_message_bits = std::max(stats_.max_message_bits, msg.bits());
    if (trace_) trace_->add(TraceRecord{round_ + 1, from, to, msg.bits()});
  }

  const Graph& g_;
  SimConfig cfg_;
  std::size_t n_;
  std::uint32_t word_bits_;
  std::uint32_t bandwidth_;
  std::uint64_t max_rounds_ = 0;
  std::uint64_t round_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<std::uint32_t> reverse_port_;
  std::vector<std::uint64_t> last_sent_;
  std::vector<std::uint8_t> halted_;
  std::size_t halted_count_ = 0;
  std::size_t pending_ = 0;
  std::vector<std::vector<Envelope>> inbox_;
  std::vector<std::vector<Envelope>> next_;
  std::vector<std::unique_ptr<std::mt19937_64>> rngs_;
  RoundStats stats_;
  std::optional<Trace> trace_;
};

}  // namespace detail

inline std::span<const NodeId> NodeContext::neighbors() const {
  return engine_->g_.neighbors(id_);
}
inline std::uint64_t NodeContext::round() const { return engine_->round_; }
inline std::uint32_t NodeContext::word_bits() const {
  return engine_->word_bits_;
}
inline std::uint32_t NodeContext::bandwidth() const {
  return engine_->bandwidth_;
}
inline std::mt19937_64& NodeContext::rng() {
  auto& slot = engine_->rngs_[id_];
  if (!slot) {
    slot = std::make_unique<std::mt19937_64>(node_seed(engine_->cfg_.seed, id_));
  }
  return *slot;
}
inline std::uint32_t NodeContext::port_of(NodeId neighbor) const {
  const auto nbrs = neighbors();
  const auto it = std::lower_bound(nbrs.begin(), nbrs.end(), neighbor);
  if (it == nbrs.end() || *it != neighbor) {
    throw std::out_of_range("node " + std::to_string(id_) +
                            " is not adjacent to " + std::to_string(neighbor));
  }
  return static_cast<std::uint32_t>(it - nbrs.begin());
}
inline void NodeContext::send_port(std::uint32_t port, const Message& msg) {
  engine_->send(id_, port, msg);
}
inline void NodeContext::broadcast(const Message& msg) {
  const auto deg = static_cast<std::uint32_t>(degree());
  for (std::uint32_t p = 0; p < deg; ++p) engine_->send(id_, p, msg);
}
inline void NodeContext::halt() {
  if (!engine_->halted_[id_]) {
    engine_->halted_[id_] = 1;
    ++engine_->halted_count_;
  }
}

template <class Node>
struct SimResult {
  std::vector<Node> nodes;
  RoundStats stats;
  std::optional<Trace> trace;
};

/// Runs programs (one per node, built from each node's local input) until
/// every node has halted and no message is in flight. A halted node that
/// receives a message is woken up. Throws BandwidthExceeded, EdgeCongested
/// or SimulationTimeout.
template <NodeProgram Node>
SimResult<Node> run_simulation(const Graph& g, std::vector<Node> nodes,
                               const SimConfig& cfg) {
  detail::Engine engine(g, cfg);
  engine.run(nodes);
  return SimResult<Node>{std::move(nodes), engine.stats(),
                         std::move(engine.trace())};
}

/// Sum of message bits over edges whose endpoints lie on different sides.
inline std::uint64_t account_cut_bits(const std::optional<Trace>& trace,
                                      std::span<const std::uint8_t> side) {
  if (!trace) throw std::invalid_argument("simulation ran without tracing");
  std::uint64_t bits = 0;
  for (const auto& r : trace->records()) {
    if (side[r.src] != side[r.dst]) bits += r.bits;
  }
  return bits;
}

// --- Aggregation over a BFS tree rooted at node 0 --------------------------

/// Convergecast-then-broadcast of an associative, commutative combine over
/// a BFS tree rooted at node 0 (the minimum id).
///
/// Schemas (tag is 2 bits):
///   FLOOD [tag][parent id: word]   announces the sender's tree parent
///   UP    [tag][value: bits_for]    partial aggregate to the parent
///   DOWN  [tag][value: bits_for]    final aggregate to the children
template <class Combine>
class GatherSpreadNode {
 public:
  GatherSpreadNode(std::uint64_t value, Combine combine)
      : acc_(value), combine_(std::move(combine)) {}

  void init(NodeContext& ctx) {
    if (ctx.id() != 0) {
      ctx.halt();
      return;
    }
    join(ctx, ctx.id(), 0);
    if (ctx.degree() == 0) finish(ctx, acc_);
  }

  void step(NodeContext& ctx, std::span<const Envelope> inbox) {
    NodeId best_parent = kNoNode;
    std::uint32_t best_port = 0;
    for (const Envelope& env : inbox) {
      switch (env.msg[0]) {
        case kFlood:
          if (!joined_) {
            if (env.from < best_parent) {
              best_parent = env.from;
              best_port = env.port;
            }
          } else if (env.msg[1] == ctx.id()) {
            children_.push_back(env.port);
          }
          break;
        case kUp:
          acc_ = combine_(acc_, env.msg[1]);
          ++reported_;
          break;
        case kDown:
          finish(ctx, env.msg[1]);
          return;
      }
    }
    if (!joined_) {
      if (best_parent == kNoNode) {
        ctx.halt();
        return;
      }
      parent_port_ = best_port;
      join(ctx, best_parent, ctx.round());
      return;
    }
    if (sent_up_ || ctx.round() < joined_round_ + 2) return;
    if (reported_ < children_.size()) return;
    if (ctx.id() == 0) {
      finish(ctx, acc_);
    } else {
      Message up;
      up.add(kUp, 2).add(acc_, bits_for(acc_));
      ctx.send_port(parent_port_, up);
      sent_up_ = true;
      ctx.halt();
    }
  }

  std::uint64_t result() const { return result_; }
  std::uint32_t depth() const { return depth_; }

 private:
  static constexpr std::uint64_t kFlood = 0;
  static constexpr std::uint64_t kUp = 1;
  static constexpr std::uint64_t kDown = 2;

  void join(NodeContext& ctx, NodeId parent, std::uint64_t round) {
    joined_ = true;
    joined_round_ = round;
    depth_ = static_cast<std::uint32_t>(round);
    Message flood;
    flood.add(kFlood, 2).add(parent, ctx.word_bits());
    ctx.broadcast(flood);
  }

  void finish(NodeContext& ctx, std::uint64_t value) {
    result_ = value;
    Message down;
    down.add(kDown, 2).add(value, bits_for(value));
    for (std::uint32_t port : children_) ctx.send_port(port, down);
    ctx.halt();
  }

  std::uint64_t acc_;
  Combine combine_;
  bool joined_ = false;
  bool sent_up_ = false;
  std::uint64_t joined_round_ = 0;
  std::uint32_t depth_ = 0;
  std::uint32_t parent_port_ = 0;
  std::vector<std::uint32_t> children_;
  std::size_t reported_ = 0;
  std::uint64_t result_ = 0;
};

struct GatherResult {
  std::vector<std::uint64_t> values;
  /// Depth of each node in the aggregation tree.
  std::vector<std::uint32_t> depth;
  RoundStats stats;
  std::optional<Trace> trace;
};

template <class Combine>
GatherResult gather_and_spread(const Graph& g,
                               std::span<const std::uint64_t> values,
                               Combine combine, const SimConfig& cfg = {}) {
  std::vector<GatherSpreadNode<Combine>> nodes;
  nodes.reserve(g.node_count());
  for (std::uint64_t v : values) nodes.emplace_back(v, combine);
  auto sim = run_simulation(g, std::move(nodes), cfg);
  GatherResult out;
  for (const auto& node : sim.nodes) {
    out.values.push_back(node.result());
    out.depth.push_back(node.depth());
  }
  out.stats = sim.stats;
  out.trace = std::move(sim.trace);
  return out;
}

}  // namespace spanners::congest

#endif  // SPANNERS_CONGEST_HPP_
