#include "binpack/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "binpack/baselines.hpp"
#include "binpack/kernels/kernels.hpp"
#include "binpack/oracle.hpp"

namespace binpack::cli {

std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept {
  if (name == "ranger") return Algorithm::Ranger;
  if (name == "ffd") return Algorithm::Ffd;
  if (name == "bfd") return Algorithm::Bfd;
  return std::nullopt;
}

std::optional<ranger::ProbeStrategy::Kind> parse_strategy(std::string_view name) noexcept {
  using K = ranger::ProbeStrategy::Kind;
  for (K k : {K::SeededRandom, K::PopLast, K::PopFirst}) {
    if (name == ranger::to_string(k)) return k;
  }
  return std::nullopt;
}

Solution run_algorithm(Algorithm algo, const Instance& instance, ranger::ProbeStrategy::Kind strategy,
                       std::uint64_t seed) {
  switch (algo) {
    case Algorithm::Ranger: return ranger::pack(instance, {strategy, seed});
    case Algorithm::Ffd: return baselines::ffd(instance);
    case Algorithm::Bfd: return baselines::bfd(instance);
  }
  throw std::invalid_argument("unknown algorithm");
}

namespace {

using Clock = std::chrono::steady_clock;

std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::Ranger: return "ranger";
    case Algorithm::Ffd: return "ffd";
    case Algorithm::Bfd: return "bfd";
  }
  return "unknown";
}

std::int64_t elapsed_ns(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count();
}

// Thrown for bad user input that is not an instance parse error.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename T>
std::vector<T> split_list(const std::string& text, const char* what) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    T v{};
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size()) {
      throw UsageError(std::string("invalid ") + what + " '" + item + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw UsageError(std::string("empty ") + what + " list");
  return out;
}

Instance load_instance(const std::string& path) {
  std::string text;
  try {
    text = io::read_file(path);
  } catch (const std::runtime_error& e) {
    throw UsageError(e.what());
  }
  try {
    return io::parse_instance(text, path);
  } catch (const io::ParseError& e) {
    throw io::ParseError(e.line(), path + ": " + e.reason());
  }
}

// Options shared by gen and compare for describing a generated family.
struct FamilyArgs {
  std::string family;
  std::optional<std::size_t> k, m, n;
  std::optional<int> decile;
  Size delta = 10'000;
  std::optional<Size> lo, hi;
  std::uint64_t seed = 0;
  Size capacity = generators::kDefaultCapacity;

  void add_to(CLI::App& app, bool with_seed) {
    app.add_option("--family", family, "complementary | range | triplets | uniform");
    app.add_option("--k", k, "pair count (complementary)");
    app.add_option("--m", m, "triple count (triplets)");
    app.add_option("--n", n, "item count (range, uniform)");
    app.add_option("--decile", decile, "large decile 5..9 (complementary) or item decile 0..9 (range)");
    app.add_option("--delta", delta, "spacing between large items (complementary)");
    app.add_option("--lo", lo, "smallest size (uniform)");
    app.add_option("--hi", hi, "largest size (uniform)");
    if (with_seed) app.add_option("--seed", seed, "generator seed");
    app.add_option("--capacity", capacity, "bin capacity");
  }

  generators::FamilySpec spec() const {
    const auto f = generators::parse_family(family);
    if (!f) throw UsageError("unknown family '" + family + "'");
    generators::FamilySpec s;
    s.family = *f;
    s.capacity = capacity;
    s.seed = seed;
    s.delta = delta;
    switch (*f) {
      case generators::Family::ComplementaryPair:
        s.count = k.value_or(2);
        s.decile = decile.value_or(6);
        break;
      case generators::Family::RangeFamily:
        s.count = n.value_or(12);
        s.decile = decile.value_or(3);
        break;
      case generators::Family::Triplet:
        s.count = m.value_or(2);
        break;
      case generators::Family::Uniform:
        s.count = n.value_or(10);
        s.lo = lo.value_or(1);
        s.hi = hi.value_or(capacity);
        break;
    }
    return s;
  }
};

void print_solution(std::ostream& out, const Instance& instance, const Solution& s, const std::string& format,
                    std::string_view strategy) {
  if (format == "json") {
    out << io::solution_to_json(s) << "\n";
    return;
  }
  if (format == "csv") {
    out << "bin,load,members\n";
    for (std::size_t i = 0; i < s.bins.size(); ++i) {
      out << i << ',' << s.bins[i].load << ',';
      for (std::size_t j = 0; j < s.bins[i].members.size(); ++j) out << (j ? " " : "") << s.bins[i].members[j];
      out << '\n';
    }
    return;
  }
  const SolutionStats st = s.stats();
  out << "algorithm: " << s.algorithm;
  if (s.algorithm == "ranger") {
    out << " (strategy " << strategy;
    if (s.seed) out << ", seed " << *s.seed;
    out << ")";
  }
  out << "\ncapacity: " << instance.capacity() << "\nitems: " << instance.item_count() << "\nbins: " << st.bin_count
      << "\n";
  for (std::size_t i = 0; i < s.bins.size(); ++i) {
    out << "  bin " << i << ": load " << s.bins[i].load << " [";
    for (std::size_t j = 0; j < s.bins[i].members.size(); ++j) out << (j ? " " : "") << s.bins[i].members[j];
    out << "]\n";
  }
  out << "total slack: " << st.total_slack << "\nmin fill: " << st.min_fill << "\n";
}

int cmd_pack(const std::string& input, const std::string& algo, const std::string& strategy, std::uint64_t seed,
             const std::string& format, std::ostream& out, std::ostream& err) {
  const Instance instance = load_instance(input);
  const Solution s = run_algorithm(*parse_algorithm(algo), instance, *parse_strategy(strategy), seed);
  const ValidationReport report = validate_solution(instance, s);
  if (!report.ok()) {
    err << "internal error: " << algo << " produced an invalid packing\n";
    for (const Violation& v : report.violations) err << "  " << v.describe() << "\n";
    return kExitInternal;
  }
  print_solution(out, instance, s, format, strategy);
  return kExitOk;
}

int cmd_gen(const FamilyArgs& args, const std::string& out_path, std::ostream& out) {
  const generators::Generated g = [&] {
    try {
      return generators::generate(args.spec());
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();
  std::string text;
  if (g.declared_optimum) text += "# declared optimum: " + std::to_string(*g.declared_optimum) + "\n";
  text += io::serialize_instance(g.instance);

  if (out_path.empty() || out_path == "-") {
    out << text;
    return kExitOk;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw UsageError("cannot write " + out_path);
  file << text;
  out << "wrote " << g.instance.item_count() << " items to " << out_path << "\n";
  if (g.declared_optimum) out << "declared optimum: " << *g.declared_optimum << "\n";
  return kExitOk;
}

int cmd_verify(const std::string& instance_path, const std::string& solution_path, std::ostream& out) {
  const Instance instance = load_instance(instance_path);
  std::string text;
  try {
    text = io::read_file(solution_path);
  } catch (const std::runtime_error& e) {
    throw UsageError(e.what());
  }
  const Solution s = io::solution_from_json(text, instance);
  const ValidationReport report = validate_solution(instance, s);
  if (report.ok()) {
    out << "ok: " << s.bin_count() << " bins, " << instance.item_count() << " items\n";
    return kExitOk;
  }
  out << "invalid: " << report.violations.size() << " violation(s)\n";
  for (const Violation& v : report.violations) out << "  " << v.describe() << "\n";
  return kExitInvalid;
}

void print_bench(std::ostream& out, const std::vector<BenchRow>& rows, const std::string& format) {
  if (format == "csv") {
    out << "n,median_ns,ns_per_item,growth\n";
    for (const BenchRow& r : rows) {
      out << r.n << ',' << r.median_ns << ',' << r.ns_per_item << ',';
      if (r.growth) out << *r.growth;
      out << '\n';
    }
    return;
  }
  out << "isa: " << kernels::to_string(kernels::active_isa()) << "\n";
  char line[128];
  std::snprintf(line, sizeof line, "%12s %14s %12s %8s\n", "n", "median_ns", "ns/item", "growth");
  out << line;
  for (const BenchRow& r : rows) {
    const std::string growth = r.growth ? std::to_string(*r.growth).substr(0, 5) : "-";
    std::snprintf(line, sizeof line, "%12zu %14lld %12.2f %8s\n", r.n, static_cast<long long>(r.median_ns),
                  r.ns_per_item, growth.c_str());
    out << line;
  }
}

}  // namespace

std::vector<io::ResultRecord> compare(const std::optional<Instance>& file_instance,
                                      const std::optional<generators::FamilySpec>& family,
                                      const CompareOptions& options) {
  std::vector<io::ResultRecord> records;
  for (std::uint64_t seed : options.seeds) {
    std::optional<Instance> instance = file_instance;
    std::optional<std::size_t> declared;
    bool seeded_instance = false;
    if (family) {
      generators::FamilySpec spec = *family;
      spec.seed = seed;
      generators::Generated g = generators::generate(spec);
      instance = std::move(g.instance);
      declared = g.declared_optimum;
      seeded_instance = spec.family == generators::Family::RangeFamily ||
                        spec.family == generators::Family::Triplet || spec.family == generators::Family::Uniform;
    }
    const std::size_t lb = oracle::lower_bound(*instance);
    std::optional<std::size_t> opt;
    if (instance->item_count() <= options.oracle_max_n) {
      oracle::OracleLimits limits;
      limits.max_items = options.oracle_max_n;
      opt = oracle::optimum_count(oracle::optimal_bins(*instance, limits));
    }
    const std::optional<std::size_t> best_known = opt ? opt : declared;

    for (Algorithm algo : options.algorithms) {
      const auto start = Clock::now();
      const Solution s = run_algorithm(algo, *instance, options.strategy, seed);
      io::ResultRecord r;
      r.elapsed_ns = elapsed_ns(start);
      r.instance = instance->name();
      r.algorithm = std::string(algorithm_name(algo));
      if (seeded_instance || (algo == Algorithm::Ranger && options.strategy == ranger::ProbeStrategy::Kind::SeededRandom)) {
        r.seed = seed;
      }
      r.bins = s.bin_count();
      r.lower_bound = lb;
      r.optimum = opt;
      if (best_known && *best_known > 0) r.ratio = static_cast<double>(r.bins) / static_cast<double>(*best_known);
      r.n = instance->item_count();
      records.push_back(std::move(r));
    }
  }
  return records;
}

std::vector<BenchRow> bench_ranger(const std::vector<std::size_t>& sizes, std::size_t repeats, std::uint64_t seed,
                                   Size capacity, ranger::ProbeStrategy::Kind strategy) {
  repeats = std::max<std::size_t>(repeats, 1);
  std::vector<Instance> instances;
  instances.reserve(sizes.size());
  for (std::size_t n : sizes) instances.push_back(generators::gen_uniform(n, 1, capacity, seed, capacity));

  // One untimed warm-up per size, then sizes take turns so slow spells on a
  // shared machine hit every size alike.
  std::size_t sink = 0;
  for (const Instance& inst : instances) sink += ranger::pack(inst, {strategy, seed}).bin_count();
  std::vector<std::vector<std::int64_t>> times(sizes.size());
  for (std::size_t r = 0; r < repeats; ++r) {
    for (std::size_t i = 0; i < instances.size(); ++i) {
      const auto start = Clock::now();
      const Solution s = ranger::pack(instances[i], {strategy, seed});
      times[i].push_back(elapsed_ns(start));
      sink += s.bin_count();
    }
  }
  (void)sink;

  std::vector<BenchRow> rows;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    auto& t = times[i];
    std::nth_element(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(t.size() / 2), t.end());
    BenchRow row;
    row.n = sizes[i];
    row.median_ns = t[t.size() / 2];
    row.ns_per_item = row.n ? static_cast<double>(row.median_ns) / static_cast<double>(row.n) : 0.0;
    if (!rows.empty() && rows.back().median_ns > 0) {
      row.growth = static_cast<double>(row.median_ns) / static_cast<double>(rows.back().median_ns);
    }
    rows.push_back(row);
  }
  return rows;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bin packing toolkit: ten-range packer, baselines, exact oracle, instance families"};
  app.require_subcommand(1);

  const std::vector<std::string> algos{"ranger", "ffd", "bfd"};
  const std::vector<std::string> strategies{"random", "pop-last", "pop-first"};

  // pack
  std::string pack_input, pack_algo = "ranger", strategy = "random", pack_format = "human";
  std::uint64_t seed = 0;
  CLI::App* pack = app.add_subcommand("pack", "Pack one instance file");
  pack->add_option("input", pack_input, "instance file")->required();
  pack->add_option("--algo", pack_algo, "ranger | ffd | bfd")->check(CLI::IsMember(algos));
  pack->add_option("--strategy", strategy, "probe strategy for ranger")->check(CLI::IsMember(strategies));
  pack->add_option("--seed", seed, "seed for the random strategy");
  pack->add_option("--format", pack_format, "json | csv | human")->check(CLI::IsMember({"json", "csv", "human"}));

  // compare
  std::string cmp_input, cmp_algos = "ranger,ffd,bfd", cmp_seeds = "0", cmp_format = "csv";
  std::size_t oracle_max_n = 12;
  FamilyArgs cmp_family;
  CLI::App* cmp = app.add_subcommand("compare", "Compare algorithms against the oracle or lower bound");
  cmp->add_option("input", cmp_input, "instance file (alternative to --family)");
  cmp_family.add_to(*cmp, false);
  cmp->add_option("--algos", cmp_algos, "comma-separated algorithms");
  cmp->add_option("--strategy", strategy, "probe strategy for ranger")->check(CLI::IsMember(strategies));
  cmp->add_option("--oracle-max-n", oracle_max_n, "largest n solved exactly");
  cmp->add_option("--seeds", cmp_seeds, "comma-separated seeds");
  cmp->add_option("--format", cmp_format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

  // gen
  FamilyArgs gen_family;
  std::string gen_out;
  CLI::App* gen = app.add_subcommand("gen", "Generate an instance file");
  gen_family.add_to(*gen, true);
  gen->get_option("--family")->required();
  gen->add_option("--out", gen_out, "output path (default: standard output)");

  // bench
  std::string bench_family = "uniform", bench_sizes = "100000,200000,400000", bench_format = "human",
              bench_isa = "auto";
  std::size_t repeats = 5;
  Size bench_capacity = generators::kDefaultCapacity;
  CLI::App* bench = app.add_subcommand("bench", "Time the ranger at several instance sizes");
  bench->add_option("--family", bench_family, "instance family")->check(CLI::IsMember({"uniform"}));
  bench->add_option("--sizes", bench_sizes, "comma-separated item counts");
  bench->add_option("--repeats", repeats, "runs per size (median reported)");
  bench->add_option("--seed", seed, "instance and strategy seed");
  bench->add_option("--capacity", bench_capacity, "bin capacity");
  bench->add_option("--strategy", strategy, "probe strategy")->check(CLI::IsMember(strategies));
  bench->add_option("--isa", bench_isa, "kernel variant: auto | scalar | avx2")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}));
  bench->add_option("--format", bench_format, "csv | human")->check(CLI::IsMember({"csv", "human"}));

  // verify
  std::string verify_instance, verify_solution;
  CLI::App* verify = app.add_subcommand("verify", "Check a JSON solution against an instance");
  verify->add_option("instance", verify_instance, "instance file")->required();
  verify->add_option("solution", verify_solution, "solution JSON")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << sub->help();
    return kExitUsage;
  }

  try {
    if (pack->parsed()) return cmd_pack(pack_input, pack_algo, strategy, seed, pack_format, out, err);

    if (cmp->parsed()) {
      CompareOptions opts;
      opts.algorithms.clear();
      std::stringstream ss(cmp_algos);
      std::string name;
      while (std::getline(ss, name, ',')) {
        const auto a = parse_algorithm(name);
        if (!a) throw UsageError("unknown algorithm '" + name + "'\n" + cmp->help());
        opts.algorithms.push_back(*a);
      }
      if (opts.algorithms.empty()) throw UsageError("no algorithms given");
      opts.strategy = *parse_strategy(strategy);
      opts.oracle_max_n = oracle_max_n;
      opts.seeds = split_list<std::uint64_t>(cmp_seeds, "seed");

      std::optional<Instance> file;
      std::optional<generators::FamilySpec> family;
      if (!cmp_input.empty() && !cmp_family.family.empty()) throw UsageError("give an input file or --family, not both");
      if (!cmp_input.empty()) {
        file = load_instance(cmp_input);
      } else if (!cmp_family.family.empty()) {
        family = cmp_family.spec();
      } else {
        throw UsageError("compare needs an input file or --family");
      }
      std::vector<io::ResultRecord> records;
      try {
        records = compare(file, family, opts);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      out << io::write_results(records, cmp_format == "json" ? io::Format::Json : io::Format::Csv);
      return kExitOk;
    }

    if (gen->parsed()) return cmd_gen(gen_family, gen_out, out);

    if (bench->parsed()) {
      if (bench_isa != "auto" && !kernels::force_isa(bench_isa == "avx2" ? kernels::Isa::Avx2 : kernels::Isa::Scalar)) {
        throw UsageError("kernel variant '" + bench_isa + "' is not available on this machine");
      }
      const auto sizes = split_list<std::size_t>(bench_sizes, "size");
      if (bench_capacity < 1 || bench_capacity > kMaxCapacity) throw UsageError("capacity out of range");
      const auto rows = bench_ranger(sizes, repeats, seed, bench_capacity, *parse_strategy(strategy));
      print_bench(out, rows, bench_format);
      if (bench_isa != "auto") kernels::reset_isa();
      return kExitOk;
    }

    if (verify->parsed()) return cmd_verify(verify_instance, verify_solution, out);
  } catch (const io::ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace binpack::cli
