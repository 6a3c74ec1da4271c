#include "shq/bench/bench.hpp"

#include <algorithm>
#include <bit>
#include <ostream>
#include <random>
#include <stdexcept>

#include "shq/oracle_queue.hpp"
#include "shq/snn/engine.hpp"
#include "shq/structured_heap.hpp"

namespace shq::bench {
namespace {

constexpr Key kKeyRange = Key{1} << 32;

class Fnv {
 public:
  void add(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h_ ^= (v >> (8 * i)) & 0xff;
      h_ *= 0x100000001b3ULL;
    }
  }
  void add(Element e) {
    add(e.id);
    add(e.key);
  }
  std::uint64_t value() const { return h_; }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

std::uint64_t contents_checksum(std::vector<Element> elements) {
  std::sort(elements.begin(), elements.end(), [](const Element& a, const Element& b) {
    return a.key != b.key ? a.key < b.key : a.id < b.id;
  });
  Fnv h;
  for (const Element& e : elements) h.add(e);
  return h.value();
}

std::vector<Element> tree_contents(const StructuredHeap& tree) {
  std::vector<Element> out;
  for (int level = 0; level < tree.levels(); ++level) {
    for (std::size_t i = 0; i < tree.layout().slots(level); ++i) {
      if (const auto& e = tree.node({level, i})) out.push_back(*e);
    }
  }
  return out;
}

// Ids 0..n-1 with keys in [0, 2^32), shuffled.
std::vector<Element> initial_elements(std::uint64_t n, std::mt19937_64& rng) {
  std::vector<Element> out(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    out[i] = {static_cast<ElementId>(i), rng() % kKeyRange};
  }
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

std::vector<Element> updates(std::uint64_t n, std::size_t count, std::mt19937_64& rng) {
  std::vector<Element> out(count);
  for (auto& e : out) e = {static_cast<ElementId>(rng() % n), rng() % kKeyRange};
  return out;
}

StructuredHeap make_tree(Structure s, int levels) {
  return s == Structure::shq_memopt ? make_memopt_queue(levels) : make_naive_queue(levels);
}

BenchRow row(Structure s, std::uint64_t n, int levels, Workload w, std::string_view op,
             double cycles, std::uint64_t checksum) {
  return {std::string(to_string(s)), n, levels, std::string(to_string(w)), std::string(op),
          cycles, checksum};
}

std::uint64_t steady_interval(const PipelineSim& sim, OpKind kind) {
  const auto stats = sim.drain_stats();
  const auto it = stats.intervals.find(kind);
  return it == stats.intervals.end() ? 0 : it->second.steady;
}

void shq_cell(Structure s, std::uint64_t n, Workload w, const BenchOptions& o, BenchReport& out) {
  const int levels = snn::levels_for(n, s == Structure::shq_memopt ? 3 : 1);
  std::mt19937_64 rng(o.seed ^ (n * 0x9e3779b97f4a7c15ULL));
  const auto elements = initial_elements(n, rng);

  if (w == Workload::insert) {
    PipelineSim sim(make_tree(s, levels));
    for (const Element& e : elements) sim.submit({OpKind::insert, e});
    sim.run_until_idle();
    out.push_back(row(s, n, levels, w, "insert", double(steady_interval(sim, OpKind::insert)),
                      contents_checksum(tree_contents(sim.tree()))));
    return;
  }

  StructuredHeap tree = make_tree(s, levels);
  for (const Element& e : elements) tree.insert(e);

  if (w == Workload::delete_insert) {
    PipelineSim sim(std::move(tree));
    for (const Element& u : updates(n, o.ops, rng)) sim.submit({OpKind::delete_insert, u});
    sim.run_until_idle();
    out.push_back(row(s, n, levels, w, "delete_insert",
                      double(steady_interval(sim, OpKind::delete_insert)),
                      contents_checksum(tree_contents(sim.tree()))));
    return;
  }

  // Hold model: the minimum is read from the root register and rescheduled.
  OracleQueue oracle;
  for (const Element& e : elements) oracle.insert(e);
  Fnv h;
  for (std::size_t i = 0; i < o.ops; ++i) {
    const Element min = *tree.top();
    if (min.key != oracle.top()->key) throw std::logic_error("structured heap minimum is wrong");
    h.add(min.key);
    const Key next = min.key + 1 + rng() % kKeyRange;
    tree.delete_insert(min.id, next);
    oracle.delete_insert(min.id, next);
  }
  out.push_back(row(s, n, levels, w, "find_min", double(kReadTopCycles), h.value()));
}

void scan_cell(std::uint64_t n, Workload w, const BenchOptions& o, BenchReport& out) {
  const Structure s = Structure::scan;
  std::mt19937_64 rng(o.seed ^ (n * 0x9e3779b97f4a7c15ULL));
  const auto elements = initial_elements(n, rng);
  ScanQueue q(n, o.scan_width);
  for (const Element& e : elements) q.insert(e);

  if (w == Workload::insert) {
    out.push_back(row(s, n, 0, w, "insert", 1.0, contents_checksum(q.contents())));
    return;
  }
  if (w == Workload::delete_insert) {
    for (const Element& u : updates(n, o.ops, rng)) q.delete_insert(u.id, u.key);
    out.push_back(row(s, n, 0, w, "delete_insert", 1.0, contents_checksum(q.contents())));
    return;
  }

  OracleQueue oracle;
  for (const Element& e : elements) oracle.insert(e);
  Fnv h;
  std::uint64_t cycles = 0;
  for (std::size_t i = 0; i < o.ops; ++i) {
    const auto [min, c] = q.find_min();
    const Element expected = *oracle.top();
    if (min != expected) throw std::logic_error("scan queue minimum disagrees with the oracle");
    cycles += c;
    h.add(min.key);
    const Key next = min.key + 1 + rng() % kKeyRange;
    q.delete_insert(min.id, next);
    oracle.delete_insert(min.id, next);
  }
  out.push_back(row(s, n, 0, w, "find_min", double(cycles) / double(o.ops), h.value()));
}

}  // namespace

ScanQueue::ScanQueue(std::size_t capacity, unsigned width) : slots_(capacity), width_(width) {
  if (width == 0) throw std::invalid_argument("comparator width must be positive");
}

void ScanQueue::insert(Element e) {
  if (e.id >= slots_.size()) {
    throw QueueError(QueueErrc::invalid_argument, "id " + std::to_string(e.id) + " out of range");
  }
  if (slots_[e.id]) throw QueueError(QueueErrc::duplicate_id, "id already queued");
  slots_[e.id] = e.key;
  ++count_;
}

Element ScanQueue::remove(ElementId id) {
  if (id >= slots_.size() || !slots_[id]) {
    throw QueueError(QueueErrc::not_found, "id " + std::to_string(id) + " not queued");
  }
  const Element e{id, *slots_[id]};
  slots_[id].reset();
  --count_;
  return e;
}

void ScanQueue::delete_insert(ElementId id, Key new_key) {
  remove(id);
  insert({id, new_key});
}

ScanQueue::MinResult ScanQueue::find_min() const {
  if (count_ == 0) throw QueueError(QueueErrc::not_found, "find_min on an empty queue");
  MinResult r;
  bool found = false;
  for (std::size_t i = 0; i < slots_.size(); ++i) {
    if (slots_[i] && (!found || *slots_[i] < r.element.key)) {
      r.element = {static_cast<ElementId>(i), *slots_[i]};
      found = true;
    }
  }
  r.cycles = scan_find_min_cycles(count_, width_);
  return r;
}

std::vector<Element> ScanQueue::contents() const {
  std::vector<Element> out;
  out.reserve(count_);
  for (std::size_t i = 0; i < slots_.size(); ++i) {
    if (slots_[i]) out.push_back({static_cast<ElementId>(i), *slots_[i]});
  }
  return out;
}

std::uint64_t scan_find_min_cycles(std::size_t n, unsigned width) {
  if (n == 0) throw std::invalid_argument("scan of an empty queue");
  if (width == 0) throw std::invalid_argument("comparator width must be positive");
  const std::uint64_t front = (n + width - 1) / width;
  const std::uint64_t tree = std::bit_width(width - 1u);  // ceil(log2(width))
  return front + tree;
}

std::string_view to_string(Structure s) {
  switch (s) {
    case Structure::shq_naive: return "shq_naive";
    case Structure::shq_memopt: return "shq_memopt";
    case Structure::scan: return "scan";
  }
  return "?";
}

std::string_view to_string(Workload w) {
  switch (w) {
    case Workload::insert: return "insert";
    case Workload::delete_insert: return "delete_insert";
    case Workload::find_min: return "find_min";
  }
  return "?";
}

std::optional<Structure> parse_structure(std::string_view text) {
  for (Structure s : {Structure::shq_naive, Structure::shq_memopt, Structure::scan}) {
    if (text == to_string(s)) return s;
  }
  return std::nullopt;
}

std::optional<Workload> parse_workload(std::string_view text) {
  for (Workload w : {Workload::insert, Workload::delete_insert, Workload::find_min}) {
    if (text == to_string(w)) return w;
  }
  return std::nullopt;
}

BenchReport sweep(const BenchOptions& options) {
  for (std::size_t i = 0; i < options.sizes.size(); ++i) {
    if (options.sizes[i] == 0) throw std::invalid_argument("sizes must be positive");
    if (i > 0 && options.sizes[i] <= options.sizes[i - 1]) {
      throw std::invalid_argument("sizes must be ascending");
    }
  }
  BenchReport report;
  for (Structure s : options.structures) {
    for (std::uint64_t n : options.sizes) {
      for (Workload w : options.workloads) {
        if (s == Structure::scan) scan_cell(n, w, options, report);
        else shq_cell(s, n, w, options, report);
      }
    }
  }
  return report;
}

void write_csv(std::ostream& out, const BenchReport& report) {
  out << kBenchCsvHeader << '\n';
  for (const BenchRow& r : report) {
    out << r.structure << ',' << r.n << ',' << r.levels << ',' << r.workload << ',' << r.op
        << ',' << r.cycles_per_op << ',' << r.checksum << '\n';
  }
}

std::string_view to_string(ScheduleCase c) {
  switch (c) {
    case ScheduleCase::inserts: return "inserts";
    case ScheduleCase::deletes: return "deletes";
    case ScheduleCase::pair_then_delete: return "pair_then_delete";
  }
  return "?";
}

ScheduleRun run_schedule(ScheduleCase which, bool trace) {
  // Ids 0..5 on a 4-level tree; ids 6 and 7 are free for inserts.
  StructuredHeap tree = make_naive_queue(4);
  for (ElementId id = 0; id < 6; ++id) tree.insert({id, Key{10} * (id + 1)});

  ScheduleRun run{which, {}, PipelineSim(std::move(tree))};
  run.sim.enable_trace(trace);
  switch (which) {
    case ScheduleCase::inserts:
      run.issues.push_back(run.sim.submit({OpKind::insert, {6, 5}}));
      run.issues.push_back(run.sim.submit({OpKind::insert, {7, 25}}));
      break;
    case ScheduleCase::deletes:
      run.issues.push_back(run.sim.submit({OpKind::remove, {0, 0}}));
      run.issues.push_back(run.sim.submit({OpKind::remove, {3, 0}}));
      break;
    case ScheduleCase::pair_then_delete: {
      const std::uint64_t t = run.sim.submit({OpKind::delete_insert, {2, 100}});
      run.issues.push_back(t);
      run.issues.push_back(t + 1);
      run.issues.push_back(run.sim.submit({OpKind::remove, {5, 0}}));
      break;
    }
  }
  run.sim.run_until_idle();
  return run;
}

}  // namespace shq::bench
