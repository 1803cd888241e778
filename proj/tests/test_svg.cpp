#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "rotband/harness.hpp"

using namespace rotband;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string svg_path() {
  const fs::path dir = fs::temp_directory_path() / "rotband_tests";
  fs::create_directories(dir);
  return (dir / "plot.svg").string();
}

// Parses the points attribute of the polyline with the given id.
std::vector<std::pair<double, double>> polyline_points(const std::string& svg,
                                                       const std::string& id) {
  const auto at = svg.find("id=\"" + id + "\"");
  REQUIRE(at != std::string::npos);
  const auto start = svg.find("points=\"", at) + 8;
  const auto end = svg.find('"', start);
  std::istringstream in(svg.substr(start, end - start));
  std::vector<std::pair<double, double>> pts;
  std::string pair;
  while (in >> pair) {
    const auto comma = pair.find(',');
    pts.emplace_back(std::stod(pair.substr(0, comma)),
                     std::stod(pair.substr(comma + 1)));
  }
  return pts;
}

double endpoint_slope(const std::vector<std::pair<double, double>>& pts) {
  return (pts.back().second - pts.front().second) /
         (pts.back().first - pts.front().first);
}

}  // namespace

TEST_CASE("log-log emission keeps power laws straight") {
  // Policy a follows sqrt(t), policy b follows t (the slope-1
  // calibration line); their pixel-slope ratio recovers the exponent.
  const long T = 100;
  AggregateResult agg;
  for (const char* name : {"a", "b"}) {
    PolicyAggregate p;
    p.policy = name;
    for (long t = 1; t <= T; ++t) {
      const double v = name[0] == 'a' ? std::sqrt(double(t)) : double(t);
      p.mean.push_back(v);
      p.q_lo.push_back(v);
      p.q_hi.push_back(v);
    }
    agg.policies.push_back(std::move(p));
  }
  SvgOptions opt;
  opt.log_x = true;
  opt.log_y = true;
  emit_svg(agg, svg_path(), opt);
  const std::string svg = slurp(svg_path());

  const auto pa = polyline_points(svg, "mean-a");
  const auto pb = polyline_points(svg, "mean-b");
  REQUIRE(pa.size() > 10);
  const double exponent = endpoint_slope(pa) / endpoint_slope(pb);
  CHECK(exponent == doctest::Approx(0.5).epsilon(0.1));

  // Straightness: interior points of line a stay on the endpoint chord.
  const double slope = endpoint_slope(pa);
  for (const auto& [x, y] : pa) {
    const double expect = pa.front().second + slope * (x - pa.front().first);
    CHECK(std::abs(y - expect) < 1.0);  // within a pixel
  }
}

TEST_CASE("svg carries one legend entry per policy and labeled axes") {
  AggregateResult agg;
  for (const char* name : {"alpha", "beta"}) {
    PolicyAggregate p;
    p.policy = name;
    p.mean = {0.0, 0.0, 0.0};
    p.q_lo = p.mean;
    p.q_hi = p.mean;
    agg.policies.push_back(std::move(p));
  }
  emit_svg(agg, svg_path());
  const std::string svg = slurp(svg_path());
  CHECK(svg.find(">alpha</text>") != std::string::npos);
  CHECK(svg.find(">beta</text>") != std::string::npos);
  CHECK(svg.find("round t") != std::string::npos);
  CHECK(svg.find("regret") != std::string::npos);
  CHECK(svg.find("id=\"mean-alpha\"") != std::string::npos);
  CHECK(svg.find("id=\"mean-beta\"") != std::string::npos);
}

TEST_CASE("empty aggregates are rejected") {
  AggregateResult empty;
  CHECK_THROWS_AS(emit_svg(empty, svg_path()), std::invalid_argument);
}
