// snnseg: event-driven oscillator segmentation on a structured heap queue,
// queue benchmarks and differential fuzzing.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "shq/app/run_config.hpp"
#include "shq/app/segmentation.hpp"
#include "shq/bench/bench.hpp"
#include "shq/fuzz.hpp"

namespace {

std::vector<std::string> split(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct SegmentArgs {
  std::string config;
  std::string image;
  std::optional<double> duration_ms;
  std::optional<std::uint64_t> seed;
  std::string queue;
  std::optional<std::uint64_t> eps;
  std::optional<std::string> out;
  std::optional<std::string> stats;
  std::optional<std::string> labels_csv;
  bool pipeline = false;
  bool wall_time = false;
};

int run_segment(const SegmentArgs& a) {
  shq::app::RunConfig config;
  try {
    if (!a.config.empty()) shq::app::load_config(a.config, config);
    if (!a.image.empty()) config.image = a.image;
    if (a.duration_ms) config.duration_seconds = *a.duration_ms / 1000.0;
    if (a.seed) config.seed = *a.seed;
    if (!a.queue.empty()) config.queue = shq::app::parse_queue_variant(a.queue);
    if (a.eps) config.eps_ticks = *a.eps;
    if (a.out) config.out = *a.out;
    if (a.stats) config.stats = *a.stats;
    if (a.labels_csv) config.labels_csv = *a.labels_csv;
    if (a.pipeline) config.pipeline_accounting = true;
    if (a.wall_time) config.wall_time = true;
    if (config.image.empty()) throw shq::app::ConfigError("no input image (--image or image=)");
  } catch (const shq::app::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return shq::app::kExitUsage;
  }
  return shq::app::run_segmentation(config, std::cerr);
}

struct BenchArgs {
  std::string structures = "shq_naive,shq_memopt,scan";
  std::string workloads = "delete_insert,find_min";
  std::vector<std::uint64_t> sizes{256, 4096, 65536};
  std::uint64_t seed = 1;
  std::size_t ops = 1000;
  unsigned width = 16;
  std::string out;
  std::string trace;
};

int run_bench(const BenchArgs& a) {
  shq::bench::BenchOptions options;
  options.sizes = a.sizes;
  options.seed = a.seed;
  options.ops = a.ops;
  options.scan_width = a.width;
  for (const auto& s : split(a.structures)) {
    const auto parsed = shq::bench::parse_structure(s);
    if (!parsed) {
      std::cerr << "unknown structure '" << s << "'\n";
      return shq::app::kExitUsage;
    }
    options.structures.push_back(*parsed);
  }
  for (const auto& w : split(a.workloads)) {
    const auto parsed = shq::bench::parse_workload(w);
    if (!parsed) {
      std::cerr << "unknown workload '" << w << "'\n";
      return shq::app::kExitUsage;
    }
    options.workloads.push_back(*parsed);
  }

  try {
    const auto report = shq::bench::sweep(options);
    if (a.out.empty()) {
      shq::bench::write_csv(std::cout, report);
    } else {
      std::ofstream out(a.out);
      shq::bench::write_csv(out, report);
      if (!out) throw std::runtime_error("cannot write " + a.out);
    }
    if (!a.trace.empty()) {
      std::ofstream out(a.trace);
      for (auto which : {shq::bench::ScheduleCase::inserts, shq::bench::ScheduleCase::deletes,
                         shq::bench::ScheduleCase::pair_then_delete}) {
        const auto run = shq::bench::run_schedule(which, true);
        out << "# " << shq::bench::to_string(which) << " issues:";
        for (auto t : run.issues) out << ' ' << t;
        out << '\n';
        run.sim.write_trace_csv(out);
      }
      if (!out) throw std::runtime_error("cannot write " + a.trace);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "bench: " << e.what() << '\n';
    return shq::app::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "bench: " << e.what() << '\n';
    return shq::app::kExitRuntime;
  }
  return shq::app::kExitOk;
}

struct FuzzArgs {
  std::uint64_t seed = 1;
  std::size_t campaigns = 1;
  std::size_t ops = 10'000;
  int levels = 6;
  std::string queue = "naive";
};

int run_fuzz(const FuzzArgs& a) {
  shq::FuzzOptions options;
  options.op_count = a.ops;
  options.levels = a.levels;
  if (a.queue == "naive") {
    options.variant = shq::LayoutKind::naive;
  } else if (a.queue == "memopt") {
    options.variant = shq::LayoutKind::memopt;
  } else {
    std::cerr << "fuzz: --queue must be naive or memopt\n";
    return shq::app::kExitUsage;
  }
  try {
    for (std::size_t c = 0; c < a.campaigns; ++c) {
      options.seed = a.seed + c;
      const auto report = shq::fuzz_compare(options);
      std::cout << "seed " << options.seed << ": " << report.to_text() << '\n';
      if (!report.ok) return shq::app::kExitRuntime;
    }
  } catch (const std::exception& e) {
    std::cerr << "fuzz: " << e.what() << '\n';
    return shq::app::kExitUsage;
  }
  return shq::app::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Event-driven image segmentation on a structured heap queue"};
  app.require_subcommand(1);

  SegmentArgs seg;
  auto* segment = app.add_subcommand("segment", "segment a PGM image");
  segment->add_option("--config", seg.config, "key = value config file");
  segment->add_option("--image", seg.image, "input image (binary PGM)");
  segment->add_option("--duration-ms", seg.duration_ms, "simulated time in ms");
  segment->add_option("--seed", seg.seed, "initial-potential seed");
  segment->add_option("--queue", seg.queue, "naive, memopt or oracle");
  segment->add_option("--eps", seg.eps, "phase gap in ticks that splits segments");
  segment->add_option("--out", seg.out, "label image (PPM)");
  segment->add_option("--stats", seg.stats, "run statistics (JSON)");
  segment->add_option("--labels-csv", seg.labels_csv, "raw labels (CSV)");
  segment->add_flag("--pipeline", seg.pipeline, "count queue cycles with the pipeline model");
  segment->add_flag("--wall-time", seg.wall_time, "add wall-clock seconds to the stats");

  BenchArgs ben;
  auto* bench = app.add_subcommand("bench", "cycle-model sweeps, CSV on stdout or --out");
  bench->add_option("--structures", ben.structures, "shq_naive,shq_memopt,scan")
      ->capture_default_str();
  bench->add_option("--workloads", ben.workloads, "insert,delete_insert,find_min")
      ->capture_default_str();
  bench->add_option("--sizes", ben.sizes, "element counts, ascending")->delimiter(',');
  bench->add_option("--seed", ben.seed);
  bench->add_option("--ops", ben.ops, "measured ops per cell")->capture_default_str();
  bench->add_option("--scan-width", ben.width, "comparators per scan cycle")
      ->capture_default_str();
  bench->add_option("--out", ben.out, "CSV output file");
  bench->add_option("--trace", ben.trace, "write cycle traces of the cascade schedules");

  FuzzArgs fz;
  auto* fuzz = app.add_subcommand("fuzz", "differential fuzzing against the reference queue");
  fuzz->add_option("--seed", fz.seed)->capture_default_str();
  fuzz->add_option("--campaigns", fz.campaigns)->capture_default_str();
  fuzz->add_option("--ops", fz.ops)->capture_default_str();
  fuzz->add_option("--levels", fz.levels)->capture_default_str();
  fuzz->add_option("--queue", fz.queue, "naive or memopt")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : shq::app::kExitUsage;
  }

  if (segment->parsed()) return run_segment(seg);
  if (bench->parsed()) return run_bench(ben);
  return run_fuzz(fz);
}
