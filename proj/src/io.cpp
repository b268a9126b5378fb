#include "binpack/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace binpack::io {
namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

struct Line {
  std::size_t number;
  std::string_view text;
};

// Non-blank, non-comment lines with their 1-based physical line numbers.
std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    const auto nl = text.find('\n');
    const std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    const std::string_view t = trim(raw);
    if (t.empty() || t.front() == '#') continue;
    out.push_back({number, t});
  }
  return out;
}

std::int64_t parse_integer(const Line& line, std::string_view what) {
  std::int64_t v = 0;
  const char* end = line.text.data() + line.text.size();
  const auto [ptr, ec] = std::from_chars(line.text.data(), end, v);
  if (ec == std::errc::result_out_of_range) throw ParseError(line.number, std::string(what) + " is out of range");
  if (ec != std::errc() || ptr != end) {
    throw ParseError(line.number, std::string(what) + " is not an integer: '" + std::string(line.text) + "'");
  }
  return v;
}

// Exact decimal weight in (0, 1] scaled to kUnitCapacity.
Size parse_unit_weight(const Line& line) {
  std::string_view t = line.text;
  auto fail = [&](const std::string& why) -> Size {
    throw ParseError(line.number, why + ": '" + std::string(line.text) + "'");
  };
  const auto dot = t.find('.');
  const std::string_view whole = t.substr(0, dot);
  const std::string_view frac = dot == std::string_view::npos ? std::string_view{} : t.substr(dot + 1);
  if (whole.empty() && frac.empty()) return fail("weight is not a decimal number");
  for (char ch : whole) {
    if (ch < '0' || ch > '9') return fail("weight is not a decimal number");
  }
  for (char ch : frac) {
    if (ch < '0' || ch > '9') return fail("weight is not a decimal number");
  }
  if (frac.size() > 9) return fail("weight has more than 9 decimal places");

  Size whole_value = 0;
  for (char ch : whole) {
    whole_value = whole_value * 10 + (ch - '0');
    if (whole_value > 1) return fail("weight exceeds 1");
  }
  Size frac_value = 0;
  for (std::size_t i = 0; i < 9; ++i) frac_value = frac_value * 10 + (i < frac.size() ? frac[i] - '0' : 0);

  const Size scaled = whole_value * kUnitCapacity + frac_value;
  if (scaled > kUnitCapacity) return fail("weight exceeds 1");
  if (scaled == 0) return fail("weight must be positive");
  return scaled;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

template <typename T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> optional_from(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

}  // namespace

ParseError::ParseError(std::size_t line, std::string reason)
    : std::runtime_error("line " + std::to_string(line) + ": " + reason), line_(line), reason_(std::move(reason)) {}

Instance parse_instance(std::string_view text, std::string name) {
  const std::vector<Line> lines = content_lines(text);
  if (lines.empty()) throw ParseError(1, "missing capacity line");

  const bool unit = lines[0].text == "unit";
  const Size capacity = unit ? kUnitCapacity : parse_integer(lines[0], "capacity");
  if (capacity < 1 || capacity > kMaxCapacity) {
    throw ParseError(lines[0].number, "capacity must be in [1, " + std::to_string(kMaxCapacity) + "]");
  }

  if (lines.size() < 2) throw ParseError(lines[0].number + 1, "missing item count line");
  const std::int64_t n = parse_integer(lines[1], "item count");
  if (n < 0) throw ParseError(lines[1].number, "item count must not be negative");
  const auto count = static_cast<std::size_t>(n);
  if (lines.size() - 2 < count) {
    const std::size_t where = lines.back().number + 1;
    throw ParseError(where, "expected " + std::to_string(count) + " sizes, found " + std::to_string(lines.size() - 2));
  }
  if (lines.size() - 2 > count) {
    throw ParseError(lines[2 + count].number, "unexpected data after " + std::to_string(count) + " sizes");
  }

  std::vector<Size> sizes;
  sizes.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const Line& line = lines[2 + i];
    const Size s = unit ? parse_unit_weight(line) : parse_integer(line, "size");
    if (s < 1) throw ParseError(line.number, "size must be positive");
    if (s > capacity) {
      throw ParseError(line.number, "size " + std::to_string(s) + " exceeds capacity " + std::to_string(capacity));
    }
    sizes.push_back(s);
  }
  return Instance(capacity, std::move(sizes), std::move(name));
}

std::string serialize_instance(const Instance& instance) {
  std::string out;
  if (!instance.name().empty()) out += "# " + instance.name() + "\n";
  out += std::to_string(instance.capacity()) + "\n" + std::to_string(instance.item_count()) + "\n";
  for (Size s : instance.sizes()) out += std::to_string(s) + "\n";
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string solution_to_json(const Solution& solution) {
  json bins = json::array();
  for (const Bin& b : solution.bins) bins.push_back({{"members", b.members}, {"load", b.load}});
  const SolutionStats st = solution.stats();
  json j = {{"algorithm", solution.algorithm},
            {"seed", optional_json(solution.seed)},
            {"capacity", solution.capacity},
            {"bins", std::move(bins)},
            {"stats", {{"bins", st.bin_count}, {"total_slack", st.total_slack}, {"min_fill", st.min_fill}}}};
  return j.dump(2);
}

Solution solution_from_json(std::string_view text, const Instance& instance) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(0, std::string("invalid JSON: ") + e.what());
  }
  Solution s;
  s.capacity = instance.capacity();
  const json* bins = &j;
  if (j.is_object()) {
    if (!j.contains("bins")) throw ParseError(0, "solution object has no \"bins\"");
    bins = &j.at("bins");
    if (j.contains("algorithm") && j.at("algorithm").is_string()) s.algorithm = j.at("algorithm").get<std::string>();
    if (j.contains("seed") && j.at("seed").is_number_unsigned()) s.seed = j.at("seed").get<std::uint64_t>();
  }
  if (!bins->is_array()) throw ParseError(0, "\"bins\" must be an array");

  try {
    for (const json& jb : *bins) {
      Bin b;
      const json& members = jb.is_object() ? jb.at("members") : jb;
      if (!members.is_array()) throw ParseError(0, "bin members must be an array");
      b.members = members.get<std::vector<ItemId>>();
      if (jb.is_object() && jb.contains("load")) {
        b.load = jb.at("load").get<Size>();
      } else {
        for (ItemId id : b.members) b.load += id < instance.item_count() ? instance.size(id) : 0;
      }
      s.bins.push_back(std::move(b));
    }
  } catch (const json::exception& e) {
    throw ParseError(0, std::string("malformed bin: ") + e.what());
  }
  return s;
}

std::string write_results(const std::vector<ResultRecord>& records, Format format) {
  if (format == Format::Json) {
    json arr = json::array();
    for (const ResultRecord& r : records) {
      arr.push_back({{"instance", r.instance},
                     {"algorithm", r.algorithm},
                     {"seed", optional_json(r.seed)},
                     {"bins", r.bins},
                     {"lower_bound", r.lower_bound},
                     {"optimum", optional_json(r.optimum)},
                     {"ratio", optional_json(r.ratio)},
                     {"elapsed_ns", r.elapsed_ns},
                     {"n", r.n}});
    }
    return arr.dump(2) + "\n";
  }

  std::string out = "instance,algorithm,seed,bins,lower_bound,optimum,ratio,elapsed_ns,n\n";
  for (const ResultRecord& r : records) {
    out += csv_field(r.instance) + ',' + csv_field(r.algorithm) + ',';
    out += (r.seed ? std::to_string(*r.seed) : "") + ',';
    out += std::to_string(r.bins) + ',' + std::to_string(r.lower_bound) + ',';
    out += (r.optimum ? std::to_string(*r.optimum) : "") + ',';
    out += (r.ratio ? format_double(*r.ratio) : "") + ',';
    out += std::to_string(r.elapsed_ns) + ',' + std::to_string(r.n) + '\n';
  }
  return out;
}

std::vector<ResultRecord> read_results_json(std::string_view text) {
  const json arr = json::parse(text);
  std::vector<ResultRecord> out;
  for (const json& j : arr) {
    ResultRecord r;
    r.instance = j.at("instance").get<std::string>();
    r.algorithm = j.at("algorithm").get<std::string>();
    r.seed = optional_from<std::uint64_t>(j, "seed");
    r.bins = j.at("bins").get<std::size_t>();
    r.lower_bound = j.at("lower_bound").get<std::size_t>();
    r.optimum = optional_from<std::size_t>(j, "optimum");
    r.ratio = optional_from<double>(j, "ratio");
    r.elapsed_ns = j.at("elapsed_ns").get<std::int64_t>();
    r.n = j.at("n").get<std::size_t>();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace binpack::io
