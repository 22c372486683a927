#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dfsf/graph.hpp"
#include "dfsf/random.hpp"
#include "dfsf/trajectory.hpp"

namespace dfsf {

// Source of answers to pair queries.
class AnswerOracle {
 public:
  virtual ~AnswerOracle() = default;
  // u is the querying stack vertex, v the candidate from T.
  virtual bool answer(Vertex u, Vertex v) = 0;
};

// Answers from an explicit graph.
class GraphOracle final : public AnswerOracle {
 public:
  explicit GraphOracle(const Graph& g) : graph_(g) {}
  bool answer(Vertex u, Vertex v) override { return graph_.has_edge(u, v); }

 private:
  const Graph& graph_;
};

// Answers by consuming the next bit of a Bernoulli stream, in query order.
class StreamOracle final : public AnswerOracle {
 public:
  explicit StreamOracle(BitStream& stream) : stream_(stream) {}
  bool answer(Vertex, Vertex) override { return stream_.next_bit(); }

 private:
  BitStream& stream_;
};

// A fixed bit list; running past its end throws StreamExhausted.
class ScriptedOracle final : public AnswerOracle {
 public:
  explicit ScriptedOracle(std::vector<bool> bits) : bits_(std::move(bits)) {}
  bool answer(Vertex u, Vertex v) override;
  size_t consumed() const { return next_; }

 private:
  std::vector<bool> bits_;
  size_t next_ = 0;
};

enum class EventKind : uint8_t { QueryAsked, VertexPushed, VertexCompleted, RootSelected };

struct Event {
  EventKind kind;
  uint64_t m;
  Vertex a;          // vertex, or querying endpoint
  Vertex b = 0;      // queried endpoint (QueryAsked only)
  bool answer = false;

  friend bool operator==(const Event&, const Event&) = default;
};

using EventLog = std::vector<Event>;

enum class Membership : uint8_t { S, U, T };

struct DfsState {
  std::vector<Membership> membership;
  std::vector<Vertex> stack;
  uint64_t m = 0;
};

struct ReferenceOptions {
  RunOptions run;
  bool record_events = false;
  // Query every pair the search left unasked (in lexicographic order) and
  // return the realized graph. Consumes further oracle answers.
  bool realize_graph = false;
  // Check both ledger identities after every event, not only at checkpoints.
  bool check_every_event = false;
};

struct ReferenceRun {
  EngineResult result;
  EventLog events;
  QueryLedger final_ledger;
  std::optional<Graph> realized;
};

// Hard upper bound on n for this engine.
inline constexpr uint32_t kReferenceMaxVertices = 5000;

// Query-by-query search. The active vertex (top of U) asks the smallest
// label in T it has not asked yet; a positive answer pushes that vertex; an
// active vertex with nothing left to ask moves to S; an empty stack takes the
// smallest label of T as a new root without spending a query.
ReferenceRun run_reference(uint32_t n, AnswerOracle& oracle, const ReferenceOptions& options = {});

// Classifies every queried pair by the current membership of its endpoints.
// A queried pair inside T is impossible and raises InvariantViolation.
QueryLedger ledger_at(std::span<const Membership> membership, std::span<const Edge> queried_pairs);

// Smallest moment at which a vertex of `giant` is pushed onto the stack.
std::optional<uint64_t> first_giant_entry(const EventLog& log, const std::vector<uint8_t>& giant);

}  // namespace dfsf
