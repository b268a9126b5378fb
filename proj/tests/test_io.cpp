#include <doctest.h>

#include <random>

#include "binpack/io.hpp"
#include "binpack/ranger.hpp"
#include "support/random_instances.hpp"

using namespace binpack;
using namespace binpack::io;

namespace {

std::size_t error_line(std::string_view text) {
  try {
    parse_instance(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("parse_instance examples") {
  const Instance inst = parse_instance("100\n3\n50\n30\n20\n", "abc");
  CHECK(inst.capacity() == 100);
  CHECK(std::vector<Size>(inst.sizes().begin(), inst.sizes().end()) == std::vector<Size>{50, 30, 20});
  CHECK(inst.name() == "abc");

  // Comments, blank lines, CRLF and surrounding spaces are tolerated.
  const Instance c = parse_instance("# header\n\n  100 \r\n2\r\n# mid\n55\n45\n\n");
  CHECK(c.item_count() == 2);
  CHECK(c.size(1) == 45);

  CHECK(parse_instance("10\n0\n").empty());
}

TEST_CASE("unit weights are scaled exactly") {
  const Instance inst = parse_instance("unit\n4\n0.5\n.25\n1\n0.000000001\n");
  CHECK(inst.capacity() == kUnitCapacity);
  CHECK(inst.size(0) == 500'000'000);
  CHECK(inst.size(1) == 250'000'000);
  CHECK(inst.size(2) == kUnitCapacity);
  CHECK(inst.size(3) == 1);
  CHECK(error_line("unit\n1\n1.5\n") == 3);
  CHECK(error_line("unit\n1\n0\n") == 3);
  CHECK(error_line("unit\n1\n0.0000000001\n") == 3);
  CHECK(error_line("unit\n1\n-0.5\n") == 3);
}

TEST_CASE("parse errors carry the physical line") {
  try {
    parse_instance("100\n2\n105\n5\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.reason() == "size 105 exceeds capacity 100");
    CHECK(std::string(e.what()) == "line 3: size 105 exceeds capacity 100");
  }
  CHECK(error_line("") == 1);
  CHECK(error_line("abc\n") == 1);
  CHECK(error_line("0\n0\n") == 1);
  CHECK(error_line("100\n") == 2);
  CHECK(error_line("100\n-1\n") == 2);
  CHECK(error_line("100\n3\n1\n2\n") == 5);       // one size short
  CHECK(error_line("100\n1\n1\n2\n") == 4);       // trailing data
  CHECK(error_line("# c\n100\n1\n\n1.5\n") == 5);  // not an integer
  CHECK(error_line("100\n1\n0\n") == 3);
  CHECK(error_line("100\n1\n12abc\n") == 3);
}

TEST_CASE("instance text round trips") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 200; ++t) {
    const Instance inst = testing::random_instance(rng, 50);
    const Instance back = parse_instance(serialize_instance(inst), inst.name());
    CHECK(back == inst);
  }
  const Instance named(10, {1, 2}, "demo");
  CHECK(serialize_instance(named) == "# demo\n10\n2\n1\n2\n");
}

TEST_CASE("solution JSON round trips") {
  const Instance inst(100, {55, 45, 30});
  const Solution s = ranger::pack(inst, ranger::ProbeStrategy::random(4));
  const Solution back = solution_from_json(solution_to_json(s), inst);
  CHECK(back == s);

  const Solution bare = solution_from_json("[[0, 1], [2]]", inst);
  CHECK(bare.bins == std::vector<Bin>{Bin{{0, 1}, 100}, Bin{{2}, 30}});
  CHECK(validate_solution(inst, bare).ok());

  const Solution mixed = solution_from_json(R"({"bins": [{"members": [0, 1], "load": 99}, [2]]})", inst);
  CHECK(mixed.bins[0].load == 99);
  CHECK(validate_solution(inst, mixed).count(Violation::Kind::LoadMismatch) == 1);

  CHECK_THROWS_AS(solution_from_json("{", inst), ParseError);
  CHECK_THROWS_AS(solution_from_json(R"({"nobins": 1})", inst), ParseError);
  CHECK_THROWS_AS(solution_from_json(R"([["a"]])", inst), ParseError);
}

TEST_CASE("write_results CSV shape") {
  ResultRecord full{"inst", "ranger", 3, 3, 2, 2, 1.5, 1200, 4};
  ResultRecord blank{"a,b", "ffd", std::nullopt, 2, 2, std::nullopt, std::nullopt, 10, 4};
  const std::string csv = write_results({full, blank}, Format::Csv);
  CHECK(csv ==
        "instance,algorithm,seed,bins,lower_bound,optimum,ratio,elapsed_ns,n\n"
        "inst,ranger,3,3,2,2,1.5,1200,4\n"
        "\"a,b\",ffd,,2,2,,,10,4\n");
  CHECK(write_results({}, Format::Csv) == "instance,algorithm,seed,bins,lower_bound,optimum,ratio,elapsed_ns,n\n");
  CHECK(write_results({}, Format::Json) == "[]\n");
}

TEST_CASE("write_results JSON round trips") {
  const std::vector<ResultRecord> records{{"inst", "ranger", 3, 3, 2, 2, 1.5, 1200, 4},
                                          {"x", "bfd", std::nullopt, 1, 1, std::nullopt, std::nullopt, 5, 1}};
  const std::string json = write_results(records, Format::Json);
  CHECK(json.find("\"optimum\": null") != std::string::npos);
  CHECK(read_results_json(json) == records);
}
