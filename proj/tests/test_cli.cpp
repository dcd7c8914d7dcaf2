#include "doctest.h"

#include "confunc/cli/commands.hpp"
#include "confunc/state_io.hpp"

#include <cstdlib>
#include <sstream>
#include <sys/wait.h>

using namespace confunc::cli;
using doctest::Approx;

namespace {

int run_tool(const std::string& args) {
  const std::string cmd = std::string(CONFUNC_TOOL) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Table round_trip(const Table& t) {
  std::stringstream buffer;
  write_csv(buffer, t);
  return parse_csv(buffer);
}

}  // namespace

TEST_CASE("range and grid parsing") {
  CHECK(parse_range("2.5") == std::vector<double>{2.5});
  const auto r = parse_range("0.25:10:0.25");
  CHECK(r.size() == 40);
  CHECK(r.back() == Approx(10.0));
  CHECK_THROWS_AS((void)parse_range("1:2"), UsageError);
  CHECK_THROWS_AS((void)parse_range("1:0:0.1"), UsageError);
  CHECK_THROWS_AS((void)parse_range("a:b:c"), UsageError);
  const auto g = parse_grid("99");
  CHECK(g.size() == 99);
  CHECK(g.front() == Approx(0.01));
  CHECK(parse_grid("0.5:1:0.25").back() == 1.0);
  CHECK_THROWS_AS((void)parse_grid("0:2:0.5"), UsageError);
  CHECK_THROWS_AS((void)parse_grid("0"), UsageError);
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.572582123) == "0.572582");
  CHECK(format_number(4.40881e-8) == "4.40881e-08");
  CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
}

TEST_CASE("csv round trip") {
  Table t{{"name", "value", "note"}, {}};
  t.add_row({std::string("a,b"), 1.5, std::monostate{}});
  t.add_row({std::string("say \"hi\""), -2.0, std::string("x")});
  t.add_row({std::string("inf"), std::numeric_limits<double>::infinity(), std::string("")});
  const auto back = round_trip(t);
  CHECK(back.columns == t.columns);
  CHECK(std::get<std::string>(back.at(0, "name")) == "a,b");
  CHECK(std::get<std::string>(back.at(1, "name")) == "say \"hi\"");
  CHECK(back.number(1, "value") == -2.0);
  CHECK(std::holds_alternative<std::monostate>(back.at(0, "note")));
  CHECK(std::isinf(back.number(2, "value")));
}

TEST_CASE("command tables round trip through csv") {
  RunConfig cfg;
  const std::vector<double> cs{0.0, 0.5, 1.0};
  const auto t = cmd_lambda0(cs, cfg);
  CHECK(round_trip(t) == round_trip(round_trip(t)));
  CHECK(round_trip(t).number(2, "lambda0") == Approx(0.572582));
  const std::vector<confunc::bounds::ConfidencePair> pairs{{0.9, 0.9}, {0.3, 0.3}, {1.0, 1.0}};
  const auto b = round_trip(cmd_bounds(pairs, cfg));
  CHECK(b.number(0, "lp_interval") == Approx(4.62261));
  CHECK(std::get<std::string>(b.at(1, "region")) == "trivial");
  CHECK(std::get<std::string>(b.at(2, "region")) == "divergent");
  CHECK(std::isinf(b.number(2, "lp_interval")));
}

TEST_CASE("json mirrors csv records") {
  RunConfig cfg;
  const std::vector<double> cs{1.0};
  std::stringstream out;
  write_json(out, cmd_lambda0(cs, cfg));
  CHECK(out.str().find("\"lambda0\": 0.572582") != std::string::npos);
}

TEST_CASE("lambda0 command") {
  RunConfig cfg;
  const auto cs = parse_range("0.25:10:0.25");
  const auto t = cmd_lambda0(cs, cfg);
  for (std::size_t r = 1; r < t.rows.size(); ++r)
    CHECK(t.number(r, "lambda0") >= t.number(r - 1, "lambda0"));
  const std::vector<double> zero{0.0};
  CHECK(cmd_lambda0(zero, cfg).number(0, "lambda0") == 0.0);
}

TEST_CASE("bounds landscape") {
  RunConfig cfg;
  const auto t = cmd_bounds_grid(parse_grid("99"), cfg);
  CHECK(t.rows.size() == 9801);
  // Row for (0.9, 0.9): index 89 * 99 + 89.
  CHECK(t.number(89 * 99 + 89, "lp_interval") == Approx(4.62261).epsilon(1e-6));
  const auto corner = cmd_bounds_grid(parse_grid("0.5:1:0.5"), cfg);
  CHECK(std::get<std::string>(corner.at(3, "region")) == "divergent");
  CHECK(std::get<std::string>(corner.at(0, "region")) == "trivial");
}

TEST_CASE("compare command") {
  RunConfig cfg;
  const std::vector<double> thetas{0.55, 0.7, 0.9};
  const auto t = cmd_compare(thetas, cfg);
  CHECK(t.number(0, "ratio") == Approx(18.1639).epsilon(1e-4));
  CHECK(t.number(1, "gaussian") == Approx(2.14839).epsilon(1e-5));
  CHECK(t.number(2, "slepian") == Approx(4.62261).epsilon(1e-5));
  const std::vector<double> bad{1.0};
  CHECK_THROWS_AS((void)cmd_compare(bad, cfg), UsageError);
}

TEST_CASE("verify suites") {
  RunConfig cfg;
  const auto two = cmd_verify("two-route", cfg);
  CHECK(two.all_passed);
  CHECK(two.table.rows.size() == 4);
  CHECK(cmd_verify("dominance", cfg).all_passed);
  CHECK(cmd_verify("theorem1", cfg).all_passed);
  CHECK_THROWS_AS((void)cmd_verify("nope", cfg), UsageError);
}

TEST_CASE("state command") {
  RunConfig cfg;
  StateParams gaussian;
  gaussian.sigma = 1.0;
  const auto g = cmd_state("gaussian", gaussian, cfg);
  const auto& s = g.summary;
  CHECK(s.rows.size() > 0);
  double sum = 0.0, bbm = 0.0;
  for (std::size_t r = 0; r < s.rows.size(); ++r) {
    const auto& name = std::get<std::string>(s.rows[r][0]);
    if (name == "entropy_sum") sum = std::get<double>(s.rows[r][1]);
    if (name == "bbm_reference") bbm = std::get<double>(s.rows[r][1]);
  }
  CHECK(sum == Approx(bbm).epsilon(1e-8));
  CHECK(g.densities.rows.size() == 4096);

  StateParams missing;
  CHECK_THROWS_AS((void)cmd_state("slepian", missing, cfg), UsageError);
  CHECK_THROWS_AS((void)cmd_state("unknown", gaussian, cfg), UsageError);
  StateParams bad_mix;
  bad_mix.mix = 1.5;
  bad_mix.length = 0.1;
  bad_mix.width = 0.1;
  CHECK_THROWS_AS((void)cmd_state("rect-sinc", bad_mix, cfg), UsageError);
}

TEST_CASE("state file round trip") {
  using namespace confunc::states;
  const auto s = gaussian_state(Grid::symmetric(5.0, 64), 1.0, 1.0, 0.3);
  const auto phi = fourier_transform(s);
  for (const auto* state : {&s, &phi}) {
    std::stringstream buffer;
    write_state(buffer, *state);
    const auto back = read_state(buffer);
    CHECK(back.grid() == state->grid());
    CHECK(back.representation() == state->representation());
    CHECK(back.conjugate_min() == state->conjugate_min());
    CHECK(std::equal(back.amplitudes().begin(), back.amplitudes().end(), state->amplitudes().begin()));
  }
  std::stringstream broken("# not-a-state\n");
  CHECK_THROWS_AS((void)read_state(broken), StateFormatError);
}

TEST_CASE("exit codes of the command-line tool") {
  CHECK(run_tool("lambda0 --c 1") == 0);
  CHECK(run_tool("lambda0") == 2);
  CHECK(run_tool("lambda0 --range 1:x:2") == 2);
  CHECK(run_tool("bounds --tx 1.2 --tp 0.5") == 2);
  CHECK(run_tool("bounds --tx 0.9 --tp 0.9 --format json") == 0);
  CHECK(run_tool("verify unknown") == 2);
  CHECK(run_tool("verify two-route") == 0);
  CHECK(run_tool("nosuchcommand") == 2);
  CHECK(run_tool("lambda0 --c 1 --order 1") == 2);
  CHECK(run_tool("state gaussian") == 2);
}

TEST_CASE("default order honours the environment") {
  ::setenv("CONFUNC_ORDER", "120", 1);
  CHECK(default_order() == 120);
  ::setenv("CONFUNC_ORDER", "abc", 1);
  CHECK_THROWS_AS((void)default_order(), UsageError);
  ::unsetenv("CONFUNC_ORDER");
  CHECK(default_order() == 400);
}
