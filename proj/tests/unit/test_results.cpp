#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "specshare/results.hpp"

using namespace specshare;

namespace
{

NetworkScenario at_elevation_parameter(double x)
{
  NetworkScenario s;
  const double h = s.bs_array.height_m;
  s.intensity_bs = x * x / (pi * h * h);
  return s;
}

std::size_t count(const std::string& text, const std::string& needle)
{
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1))
    ++n;
  return n;
}

}  // namespace

TEST_CASE("dBm conversion")
{
  CHECK(watts_to_dbm(1.0) == doctest::Approx(30.0));
  CHECK(watts_to_dbm(1e-15) == doctest::Approx(-120.0));
  CHECK(dbm_to_watts(-120.0) == doctest::Approx(1e-15));
  for (double dbm : {-150.0, -97.3, 0.0, 43.0})
    CHECK(watts_to_dbm(dbm_to_watts(dbm)) == doctest::Approx(dbm).epsilon(1e-12));
}

TEST_CASE("number formatting round trips")
{
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(30.0) == "30");
  CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
  const double v = -123.45238091589195;
  CHECK(std::stod(format_number(v)) == v);
}

TEST_CASE("result rows")
{
  const auto r = make_row("cbc", 1e-7, 5e3, 1e-15, 1e-16, 50.0);
  CHECK(r.lambda_bs_per_km2 == doctest::Approx(0.1));
  CHECK(r.r_exc_km == doctest::Approx(5.0));
  CHECK(r.mean_dbm == doctest::Approx(-120.0));
  CHECK(r.error_db == doctest::Approx(10.0 * std::log10(1.1)));
  CHECK(r.elevation_parameter == doctest::Approx(50.0 * std::sqrt(pi * 1e-7)));
  CHECK_THROWS_AS(make_row("cbc", 1e-7, 5e3, 0.0, 0.0, 50.0), std::invalid_argument);
  CHECK_THROWS_AS(make_row("cbc", 1e-7, 5e3, std::nan(""), 0.0, 50.0), std::invalid_argument);
}

TEST_CASE("results CSV dialect")
{
  std::vector<ResultRow> rows{make_row("cbc", 1e-7, 5e3, 1e-15, 1e-19, 50.0),
                              make_row("aaecc", 1e-7, 5e3, 2e-15, 0.0, 50.0)};
  rows[0].eta = 1.25;
  for (auto& r : rows)
    r.lambda_bs_per_km2 = 0.1;  // as configured, the way the runner reports it
  std::ostringstream a, b;
  write_results_csv(a, rows);
  write_results_csv(b, rows);
  CHECK(a.str() == b.str());

  std::istringstream in(a.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "model,lambda_bs_per_km2,r_exc_km,mean_dbm,error_db,elevation_parameter,eta");
  std::getline(in, line);
  CHECK(line.rfind("cbc,0.1,5,-120,", 0) == 0);
  CHECK(line.substr(line.size() - 5) == ",1.25");
  std::getline(in, line);
  CHECK(line.back() == ',');  // empty eta cell
  CHECK(count(a.str(), "\n") == 3);
  CHECK(a.str().find('\r') == std::string::npos);

  std::ostringstream t;
  write_timings_csv(t, rows);
  CHECK(t.str().rfind("model,lambda_bs_per_km2,r_exc_km,wall_time_s\n", 0) == 0);
}

TEST_CASE("eta table")
{
  std::vector<NetworkScenario> scenarios;
  for (double x : {0.028, 0.0089, 0.0198, 0.095})
    scenarios.push_back(at_elevation_parameter(x));
  const auto rows = eta_table(scenarios);
  REQUIRE(rows.size() == 4);
  for (std::size_t i = 1; i < rows.size(); ++i)
  {
    CHECK(rows[i].elevation_parameter > rows[i - 1].elevation_parameter);
    CHECK(rows[i].eta > rows[i - 1].eta);
  }
  CHECK(rows.front().eta > 1.0);
  CHECK(rows.back().elevation_parameter == doctest::Approx(0.095));
  CHECK(rows.back().eta < 2.0);

  const std::vector<NetworkScenario> one{at_elevation_parameter(0.0198)};
  const auto text = emit_eta_table(one);
  CHECK(text.rfind("elevation_parameter,eta\n", 0) == 0);
  CHECK(count(text, "\n") == 2);
  CHECK_THROWS_AS(emit_eta_table(std::vector<NetworkScenario>{}), std::invalid_argument);
}

TEST_CASE("sweep figure")
{
  std::vector<ResultRow> rows;
  for (const char* model : {"cbc", "aaecc"})
    for (double lambda : {1e-8, 1e-7})
      for (double r : {5e3, 10e3, 20e3})
        rows.push_back(make_row(model, lambda, r, 1e-12 * lambda / (r * r), 0.0, 50.0));
  std::ostringstream os;
  write_sweep_svg(os, rows, "a < b & c");
  const auto svg = os.str();
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(count(svg, "<polyline") == 4);
  CHECK(count(svg, "<circle") == 12);
  CHECK(svg.find("a &lt; b &amp; c") != std::string::npos);
  CHECK(svg.find("nan") == std::string::npos);

  std::ostringstream empty;
  write_sweep_svg(empty, {}, "empty");
  CHECK(empty.str().find("</svg>") != std::string::npos);
}
