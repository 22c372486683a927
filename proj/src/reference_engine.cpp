#include "dfsf/reference_engine.hpp"

#include <bit>
#include <string>

#include "dfsf/errors.hpp"

namespace dfsf {

bool ScriptedOracle::answer(Vertex u, Vertex v) {
  if (next_ >= bits_.size())
    throw StreamExhausted("scripted answers exhausted at query (" + std::to_string(u) + "," + std::to_string(v) + ")");
  return bits_[next_++];
}

namespace {

uint64_t* ledger_slot(QueryLedger& ledger, Membership a, Membership b) {
  if (a == Membership::T && b == Membership::T) return nullptr;
  if (a == Membership::T || b == Membership::T) {
    const Membership other = (a == Membership::T) ? b : a;
    return other == Membership::S ? &ledger.q_ST : &ledger.q_UT;
  }
  return &ledger.q_SU;
}

void check_identities(const QueryLedger& ledger, uint64_t size_S, uint64_t size_T, uint64_t m) {
  if (ledger.q_ST != size_S * size_T)
    throw InvariantViolation("ledger: q_ST=" + std::to_string(ledger.q_ST) + " but |S||T|=" +
                             std::to_string(size_S * size_T) + " at m=" + std::to_string(m));
  if (ledger.total() != m)
    throw InvariantViolation("ledger: counts sum to " + std::to_string(ledger.total()) + " but m=" + std::to_string(m));
}

// Dense bit rows; row v records which partners v has been queried against.
class BitMatrix {
 public:
  BitMatrix(uint32_t rows, uint32_t cols) : words_((cols + 63) / 64), bits_(static_cast<size_t>(rows) * words_, 0) {}
  bool test(uint32_t r, uint32_t c) const { return (bits_[r * words_ + c / 64] >> (c % 64)) & 1; }
  void set(uint32_t r, uint32_t c) { bits_[r * words_ + c / 64] |= uint64_t{1} << (c % 64); }
  const uint64_t* row(uint32_t r) const { return bits_.data() + static_cast<size_t>(r) * words_; }
  size_t words() const { return words_; }

 private:
  size_t words_;
  std::vector<uint64_t> bits_;
};

}  // namespace

ReferenceRun run_reference(uint32_t n, AnswerOracle& oracle, const ReferenceOptions& options) {
  if (n == 0) throw ConfigError("reference engine: n must be at least 1");
  if (n > kReferenceMaxVertices)
    throw ConfigError("reference engine: n=" + std::to_string(n) + " exceeds the limit of " +
                      std::to_string(kReferenceMaxVertices));

  const auto& checkpoints = options.run.checkpoints;
  const auto& residual_moments = options.run.residual_moments;
  const std::vector<uint8_t>* giant = options.run.giant;

  ReferenceRun out;
  EngineResult& res = out.result;
  res.n = n;

  const size_t words = (n + 63) / 64;
  std::vector<uint64_t> in_T(words, ~uint64_t{0});
  if (n % 64) in_T.back() = (uint64_t{1} << (n % 64)) - 1;
  BitMatrix queried(n, n);
  std::vector<Membership> membership(n, Membership::T);
  std::vector<std::vector<Vertex>> partners(n);
  std::vector<Vertex> stack;
  QueryLedger ledger;
  uint64_t size_S = 0;
  uint64_t size_T = n;
  uint64_t m = 0;
  size_t next_checkpoint = 0;

  auto relocate = [&](Vertex x, Membership to) {
    for (Vertex y : partners[x]) {
      uint64_t* from_slot = ledger_slot(ledger, membership[x], membership[y]);
      uint64_t* to_slot = ledger_slot(ledger, to, membership[y]);
      if (!from_slot || !to_slot)
        throw InvariantViolation("ledger: queried pair (" + std::to_string(x) + "," + std::to_string(y) + ") inside T");
      --*from_slot;
      ++*to_slot;
    }
    membership[x] = to;
  };

  auto log = [&](Event e) {
    if (options.record_events) out.events.push_back(e);
  };

  auto push = [&](Vertex v) {
    in_T[v / 64] &= ~(uint64_t{1} << (v % 64));
    --size_T;
    relocate(v, Membership::U);
    stack.push_back(v);
    log({EventKind::VertexPushed, m, v});
    if (stack.size() > res.max_stack) {
      res.max_stack = stack.size();
      res.max_stack_moment = m;
    }
    if (giant && !res.first_giant_entry && (*giant)[v]) res.first_giant_entry = m;
  };

  auto emit_samples = [&]() {
    while (next_checkpoint < checkpoints.size() && checkpoints[next_checkpoint] <= m) {
      if (checkpoints[next_checkpoint] == m) {
        check_identities(ledger, size_S, size_T, m);
        res.samples.push_back({m, size_S, stack.size(), size_T, ledger});
      }
      ++next_checkpoint;
    }
    for (uint64_t r : residual_moments) {
      if (r != m || res.residual_at(m)) continue;
      ResidualSnapshot snap{m, std::vector<uint8_t>(n)};
      for (Vertex v = 0; v < n; ++v) snap.in_T[v] = membership[v] == Membership::T;
      res.residuals.push_back(std::move(snap));
    }
  };

  while (true) {
    if (stack.empty()) {
      if (size_T == 0) break;
      Vertex root = 0;
      for (size_t w = 0; w < words; ++w) {
        if (in_T[w]) {
          root = static_cast<Vertex>(w * 64 + std::countr_zero(in_T[w]));
          break;
        }
      }
      log({EventKind::RootSelected, m, root});
      push(root);
      if (options.check_every_event) check_identities(ledger, size_S, size_T, m);
      continue;
    }

    const Vertex u = stack.back();
    const uint64_t* asked = queried.row(u);
    int64_t candidate = -1;
    for (size_t w = 0; w < words; ++w) {
      const uint64_t open = in_T[w] & ~asked[w];
      if (open) {
        candidate = static_cast<int64_t>(w * 64 + std::countr_zero(open));
        break;
      }
    }

    if (candidate < 0) {
      stack.pop_back();
      relocate(u, Membership::S);
      ++size_S;
      log({EventKind::VertexCompleted, m, u});
      if (options.check_every_event) check_identities(ledger, size_S, size_T, m);
      continue;
    }

    emit_samples();
    const auto w = static_cast<Vertex>(candidate);
    queried.set(u, w);
    queried.set(w, u);
    partners[u].push_back(w);
    partners[w].push_back(u);
    ++ledger.q_UT;
    const bool positive = oracle.answer(u, w);
    ++m;
    log({EventKind::QueryAsked, m, u, w, positive});
    if (positive) {
      res.forest_edges.emplace_back(u, w);
      push(w);
    }
    if (options.check_every_event) check_identities(ledger, size_S, size_T, m);
  }
  emit_samples();
  check_identities(ledger, size_S, size_T, m);

  res.dfs_query_total = m;
  res.completion_queries = pair_count(n) - m;
  out.final_ledger = ledger;

  if (options.realize_graph) {
    std::vector<Edge> edges = res.forest_edges;
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u + 1; v < n; ++v) {
        if (queried.test(u, v)) continue;
        queried.set(u, v);
        queried.set(v, u);
        if (oracle.answer(u, v)) edges.emplace_back(u, v);
      }
    }
    out.realized = Graph::from_edges(n, std::move(edges));
  }
  return out;
}

QueryLedger ledger_at(std::span<const Membership> membership, std::span<const Edge> queried_pairs) {
  QueryLedger ledger;
  for (const auto& [u, v] : queried_pairs) {
    uint64_t* slot = ledger_slot(ledger, membership[u], membership[v]);
    if (!slot)
      throw InvariantViolation("ledger: queried pair (" + std::to_string(u) + "," + std::to_string(v) + ") inside T");
    ++*slot;
  }
  return ledger;
}

std::optional<uint64_t> first_giant_entry(const EventLog& log, const std::vector<uint8_t>& giant) {
  for (const Event& e : log)
    if (e.kind == EventKind::VertexPushed && e.a < giant.size() && giant[e.a]) return e.m;
  return std::nullopt;
}

}  // namespace dfsf
