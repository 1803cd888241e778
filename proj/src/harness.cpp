#include "rotband/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "rotband/rng.hpp"

namespace rotband {

namespace {

using nlohmann::json;

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

const std::set<std::string>& known_policy_ids() {
  static const std::set<std::string> ids = {
      "raw_ucb",  "ucb1",        "eff_raw_ucb", "fewa",
      "eff_fewa", "round_robin", "exp3s",       "greedy_oracle"};
  return ids;
}

Environment build_environment(const json& e, long T, std::uint64_t seed) {
  const std::string gen = e.at("generator").get<std::string>();
  if (gen == "rested_two_arm") {
    return make_rested_two_arm(e.value("L", 1.0),
                               e.at("break_pull").get<long>(), T,
                               e.value("sigma", 1.0));
  }
  if (gen == "piecewise") {
    PiecewiseSpec spec;
    spec.breakpoints = e.value("breakpoints", std::vector<long>{});
    spec.levels = e.at("levels").get<std::vector<std::vector<double>>>();
    return make_piecewise_env(spec, T, e.value("sigma", 1.0));
  }
  if (gen == "piecewise_lb") {
    const int K = e.at("K").get<int>();
    const int upsilon = e.at("upsilon").get<int>();
    std::vector<int> i_star;
    const json& is = e.at("i_star");
    if (is.is_string() && is.get<std::string>() == "random") {
      Rng rng(substream_seed(seed, 0xC0FFEEULL));
      for (int k = 0; k < upsilon; ++k) {
        i_star.push_back(static_cast<int>(rng.next_u64() % K));
      }
    } else {
      i_star = is.get<std::vector<int>>();
    }
    return make_piecewise_lb_instance(K, upsilon, T, e.value("sigma", 1.0),
                                      i_star);
  }
  if (gen == "prop1_mu0") return make_prop1_pair(T).first;
  if (gen == "prop1_mu1") return make_prop1_pair(T).second;
  if (gen == "dataset") {
    return dataset_env_from_table(
        read_dataset_csv(e.at("table").get<std::string>()),
        e.value("samples_per_round", 10));
  }
  throw std::invalid_argument("unknown environment generator: " + gen);
}

PolicyEntry parse_policy(const json& p, long T, const Environment& env) {
  PolicyEntry entry;
  entry.id = p.at("id").get<std::string>();
  if (!known_policy_ids().count(entry.id)) {
    throw std::invalid_argument("unknown policy id: " + entry.id);
  }
  entry.label = p.value("label", entry.id);
  entry.config.alpha = p.value("alpha", 4.0);
  entry.config.sigma = p.value("sigma", 1.0);
  entry.config.m = p.value("m", 2.0);
  entry.config.dense = p.value("dense", false);
  if (entry.id == "exp3s") {
    if (p.contains("gamma")) {
      entry.config.exp3s =
          Exp3sConfig{p.at("gamma").get<double>(), p.value("alpha_exp", 0.0)};
    } else if (p.contains("budget")) {
      entry.config.exp3s = exp3s_tuning_from_budget(
          T, env.K, p.at("budget").get<double>(), entry.config.sigma);
    } else {
      entry.config.exp3s =
          exp3s_tuning_from_batches(T, env.K, p.value("batches", 1L));
    }
  }
  return entry;
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& err) {
    throw std::invalid_argument(std::string("config parse error: ") +
                                err.what());
  }
  try {
    ExperimentConfig cfg;
    cfg.name = j.value("name", "experiment");
    cfg.base_seed = j.value("seed", std::uint64_t{0});
    cfg.replications = j.value("replications", 1L);
    if (cfg.replications < 1) {
      throw std::invalid_argument("replications must be >= 1");
    }
    if (j.contains("quantiles")) {
      auto q = j.at("quantiles").get<std::vector<double>>();
      if (q.size() != 2) throw std::invalid_argument("quantiles: need two");
      cfg.quantiles = {q[0], q[1]};
    }
    for (double q : cfg.quantiles) {
      if (!(q > 0.0 && q < 1.0)) {
        throw std::invalid_argument("quantiles must lie in (0, 1)");
      }
    }
    cfg.output_dir = j.value("output_dir", ".");
    const std::string oracle = j.value("oracle", "greedy");
    if (oracle == "greedy") {
      cfg.oracle = OracleKind::Greedy;
    } else if (oracle == "exhaustive") {
      cfg.oracle = OracleKind::Exhaustive;
    } else {
      throw std::invalid_argument("oracle must be greedy or exhaustive");
    }
    cfg.write_runs = j.value("write_runs", true);
    cfg.write_svg = j.value("write_svg", true);
    cfg.svg_log_x = j.value("svg_log_x", false);
    cfg.svg_log_y = j.value("svg_log_y", false);

    cfg.T = j.value("T", 0L);
    cfg.env = build_environment(j.at("environment"), cfg.T, cfg.base_seed);
    if (cfg.T == 0) cfg.T = cfg.env.T;
    if (cfg.T < 1 || cfg.T > cfg.env.T) {
      throw std::invalid_argument("T must lie in [1, environment horizon]");
    }
    const json& pols = j.at("policies");
    if (!pols.is_array() || pols.empty()) {
      throw std::invalid_argument("policies must be a non-empty array");
    }
    for (const json& p : pols) cfg.policies.push_back(parse_policy(p, cfg.T, cfg.env));
    return cfg;
  } catch (const json::exception& err) {
    throw std::invalid_argument(std::string("config error: ") + err.what());
  }
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_experiment_config(buf.str());
}

RunResult run_one(const Environment& env, const PolicyEntry& entry, long T,
                  long replication, std::uint64_t base_seed,
                  OracleKind oracle) {
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t rep_seed =
      substream_seed(base_seed, static_cast<std::uint64_t>(replication));
  const std::uint64_t policy_seed = substream_seed(
      substream_seed(base_seed ^ 0xA5A5A5A5A5A5A5A5ULL, fnv1a(entry.id)),
      static_cast<std::uint64_t>(replication));

  std::vector<Rng> arm_rng;
  arm_rng.reserve(env.K);
  for (ArmId i = 0; i < env.K; ++i) {
    arm_rng.emplace_back(
        substream_seed(rep_seed, static_cast<std::uint64_t>(i) + 1));
  }
  auto policy = make_policy(entry.id, env.K, entry.config, &env.surface,
                            env.declared_range, policy_seed);
  std::vector<long> pulls(env.K, 0);
  Trace trace;
  trace.reserve(T);
  for (long t = 1; t <= T; ++t) {
    const ArmId arm = policy->choose(t);
    const double mean = env.surface.mean(arm, t, pulls[arm]);
    const double obs = mean + sample_noise(env, mean, arm_rng[arm]);
    ++pulls[arm];
    policy->observe(arm, obs);
    trace.push_back({t, arm, mean, obs});
  }
  const RegretReport report = regret_trajectory(trace, env, oracle);

  RunResult result;
  result.policy = entry.label.empty() ? entry.id : entry.label;
  result.replication = replication;
  result.arms.reserve(T);
  for (const TraceEntry& e : trace) result.arms.push_back(e.arm);
  result.regret = report.cumulative;
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

std::vector<RunResult> run_experiment(const ExperimentConfig& config) {
  std::vector<RunResult> results(config.policies.size() * config.replications);
  unsigned threads = std::thread::hardware_concurrency();
  if (const char* env = std::getenv("BANDIT_THREADS")) {
    const unsigned n = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
    if (n > 0) threads = n;
  }
  threads = std::max(1u, std::min<unsigned>(threads, results.size()));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= results.size()) return;
      const std::size_t p = idx / config.replications;
      const long r = static_cast<long>(idx % config.replications);
      results[idx] = run_one(config.env, config.policies[p], config.T, r,
                             config.base_seed, config.oracle);
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return results;
}

AggregateResult aggregate(const std::vector<RunResult>& results,
                          std::array<double, 2> quantiles) {
  if (results.empty()) throw std::invalid_argument("no results to aggregate");
  AggregateResult agg;
  agg.quantiles = quantiles;
  // Group by policy, preserving first-appearance order.
  std::vector<std::string> order;
  std::map<std::string, std::vector<const RunResult*>> groups;
  for (const RunResult& r : results) {
    auto [it, inserted] = groups.try_emplace(r.policy);
    if (inserted) order.push_back(r.policy);
    it->second.push_back(&r);
  }
  auto quantile = [](std::vector<double>& v, double q) {
    const double pos = q * static_cast<double>(v.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
  };
  for (const std::string& name : order) {
    const auto& runs = groups[name];
    const std::size_t T = runs.front()->regret.size();
    PolicyAggregate pa;
    pa.policy = name;
    pa.mean.resize(T);
    pa.q_lo.resize(T);
    pa.q_hi.resize(T);
    std::vector<double> column(runs.size());
    for (std::size_t t = 0; t < T; ++t) {
      double sum = 0.0;
      for (std::size_t r = 0; r < runs.size(); ++r) {
        column[r] = runs[r]->regret[t];
        sum += column[r];
      }
      pa.mean[t] = sum / static_cast<double>(runs.size());
      std::sort(column.begin(), column.end());
      pa.q_lo[t] = quantile(column, quantiles[0]);
      pa.q_hi[t] = quantile(column, quantiles[1]);
    }
    for (const RunResult* r : runs) pa.wall_seconds += r->wall_seconds;
    agg.policies.push_back(std::move(pa));
  }
  return agg;
}

namespace {

struct LogRow {
  long ts;
  long article;
  int click;
};

long parse_long_field(std::string_view s, long line) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::runtime_error("parse error at line " + std::to_string(line));
  }
  return v;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      fields.push_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return fields;
}

}  // namespace

std::vector<DatasetRow> ingest_click_log(
    const std::string& path, long bucket_minutes, long rolling_window,
    std::optional<std::array<long, 2>> span_seconds) {
  if (rolling_window < 1) {
    throw std::invalid_argument("rolling_window must be >= 1");
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open click log: " + path);

  std::vector<LogRow> rows;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (lineno == 1 && !std::isdigit(static_cast<unsigned char>(line[0]))) {
      continue;  // header
    }
    const auto fields = split_csv(line);
    if (fields.size() != 3) {
      throw std::runtime_error("parse error at line " + std::to_string(lineno));
    }
    LogRow row{parse_long_field(fields[0], lineno),
               parse_long_field(fields[1], lineno),
               static_cast<int>(parse_long_field(fields[2], lineno))};
    if (row.click != 0 && row.click != 1) {
      throw std::runtime_error("parse error at line " + std::to_string(lineno));
    }
    if (span_seconds &&
        (row.ts < (*span_seconds)[0] || row.ts >= (*span_seconds)[1])) {
      continue;
    }
    rows.push_back(row);
  }
  if (rows.empty()) throw std::runtime_error("empty span: no rows kept");
  std::stable_sort(rows.begin(), rows.end(),
                   [](const LogRow& a, const LogRow& b) { return a.ts < b.ts; });

  const long bucket_seconds = bucket_minutes * 60;
  std::set<long> bucket_keys;
  for (const LogRow& r : rows) bucket_keys.insert(r.ts / bucket_seconds);
  std::map<long, long> bucket_index;
  long bi = 0;
  for (long key : bucket_keys) bucket_index[key] = bi++;
  const long B = bi;

  // Keep only articles seen in every bucket.
  std::map<long, std::set<long>> seen_in;
  for (const LogRow& r : rows) {
    seen_in[r.article].insert(bucket_index[r.ts / bucket_seconds]);
  }
  std::map<long, int> arm_of;
  int arm = 0;
  for (const auto& [article, buckets] : seen_in) {
    if (static_cast<long>(buckets.size()) == B) arm_of[article] = arm++;
  }
  if (arm_of.empty()) {
    throw std::runtime_error("no article appears in every bucket");
  }

  // Trailing rolling mean per article; per-bucket averages of it.
  struct Roller {
    std::vector<int> buf;
    std::size_t head = 0;
    long sum = 0;
    long cap;
    double push(int click) {
      if (static_cast<long>(buf.size()) < cap) {
        buf.push_back(click);
        sum += click;
      } else {
        sum += click - buf[head];
        buf[head] = click;
        head = (head + 1) % buf.size();
      }
      return static_cast<double>(sum) / static_cast<double>(buf.size());
    }
  };
  std::map<long, Roller> rollers;
  const long A = static_cast<long>(arm_of.size());
  std::vector<double> value_sum(B * A, 0.0);
  std::vector<long> value_cnt(B * A, 0);
  std::vector<long> traffic(B, 0);
  for (const LogRow& r : rows) {
    auto it = arm_of.find(r.article);
    if (it == arm_of.end()) continue;
    auto [roller_it, inserted] = rollers.try_emplace(r.article);
    if (inserted) roller_it->second.cap = rolling_window;
    const double rolling = roller_it->second.push(r.click);
    const long b = bucket_index[r.ts / bucket_seconds];
    value_sum[b * A + it->second] += rolling;
    ++value_cnt[b * A + it->second];
    ++traffic[b];
  }

  std::vector<DatasetRow> table;
  table.reserve(B * A);
  for (long b = 0; b < B; ++b) {
    for (int a = 0; a < A; ++a) {
      table.push_back({b, a, value_sum[b * A + a] / value_cnt[b * A + a],
                       traffic[b]});
    }
  }
  return table;
}

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  return out;
}

}  // namespace

std::vector<DatasetRow> read_dataset_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open dataset table: " + path);
  std::vector<DatasetRow> table;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (lineno == 1 && !std::isdigit(static_cast<unsigned char>(line[0]))) {
      continue;
    }
    const auto fields = split_csv(line);
    if (fields.size() != 4) {
      throw std::runtime_error("parse error at line " + std::to_string(lineno));
    }
    DatasetRow row;
    row.bucket = parse_long_field(fields[0], lineno);
    row.arm = static_cast<int>(parse_long_field(fields[1], lineno));
    row.mean = std::strtod(std::string(fields[2]).c_str(), nullptr);
    row.traffic = parse_long_field(fields[3], lineno);
    table.push_back(row);
  }
  return table;
}

void write_dataset_csv(const std::vector<DatasetRow>& table,
                       const std::string& path) {
  auto out = open_out(path);
  out << "bucket,arm,mean,traffic\n";
  for (const DatasetRow& r : table) {
    out << r.bucket << ',' << r.arm << ',' << fmt17(r.mean) << ',' << r.traffic
        << '\n';
  }
}

void emit_csv(const std::vector<RunResult>& results, const std::string& path) {
  auto out = open_out(path);
  out << "policy,replication,t,arm,regret\n";
  for (const RunResult& r : results) {
    for (std::size_t i = 0; i < r.regret.size(); ++i) {
      out << r.policy << ',' << r.replication << ',' << (i + 1) << ','
          << r.arms[i] << ',' << fmt17(r.regret[i]) << '\n';
    }
  }
}

void emit_csv(const AggregateResult& agg, const std::string& path) {
  auto out = open_out(path);
  out << "policy,t,mean_regret,q_lo,q_hi\n";
  for (const PolicyAggregate& p : agg.policies) {
    for (std::size_t i = 0; i < p.mean.size(); ++i) {
      out << p.policy << ',' << (i + 1) << ',' << fmt17(p.mean[i]) << ','
          << fmt17(p.q_lo[i]) << ',' << fmt17(p.q_hi[i]) << '\n';
    }
  }
}

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#ff7f0e", "#9467bd", "#8c564b",
                                    "#17becf", "#7f7f7f"};

std::string fmt_tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

}  // namespace

void emit_svg(const AggregateResult& agg, const std::string& path,
              const SvgOptions& options) {
  if (agg.policies.empty() || agg.policies.front().mean.empty()) {
    throw std::invalid_argument("emit_svg: empty aggregate");
  }
  const double W = 860, H = 520, ML = 70, MR = 160, MT = 30, MB = 55;
  const double PW = W - ML - MR, PH = H - MT - MB;
  const long T = static_cast<long>(agg.policies.front().mean.size());

  auto tx = [&](double t) { return options.log_x ? std::log10(t) : t; };
  auto ty = [&](double y) { return options.log_y ? std::log10(y) : y; };
  auto y_ok = [&](double y) { return !options.log_y || y > 0.0; };

  double xmin = tx(1), xmax = tx(static_cast<double>(T));
  double ymin = std::numeric_limits<double>::infinity(), ymax = -ymin;
  auto scan = [&](const std::vector<double>& v) {
    for (double y : v) {
      if (!y_ok(y)) continue;
      ymin = std::min(ymin, ty(y));
      ymax = std::max(ymax, ty(y));
    }
  };
  for (const PolicyAggregate& p : agg.policies) {
    scan(p.mean);
    scan(p.q_lo);
    scan(p.q_hi);
  }
  for (const auto& [name, v] : options.overlays) scan(v);
  if (!(ymin < ymax)) {
    ymax = ymin + 1.0;
    ymin -= 1.0;
  }
  if (xmax <= xmin) xmax = xmin + 1.0;

  auto px = [&](double t) { return ML + (tx(t) - xmin) / (xmax - xmin) * PW; };
  auto py = [&](double y) {
    return MT + PH - (ty(y) - ymin) / (ymax - ymin) * PH;
  };
  const long stride = std::max(1L, T / 1000);

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
      << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << ' ' << H
      << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  auto points_of = [&](const std::vector<double>& v, bool reversed) {
    std::ostringstream pts;
    auto emit_point = [&](long i) {
      const double y = v[i];
      if (!y_ok(y)) return;
      pts << px(static_cast<double>(i + 1)) << ',' << py(y) << ' ';
    };
    if (!reversed) {
      for (long i = 0; i < T; i += stride) emit_point(i);
      emit_point(T - 1);
    } else {
      emit_point(T - 1);
      for (long i = (T - 1) / stride * stride; i >= 0; i -= stride) {
        emit_point(i);
      }
    }
    return pts.str();
  };

  int ci = 0;
  for (const PolicyAggregate& p : agg.policies) {
    const char* color = kPalette[ci % 8];
    svg << "<polygon class=\"band\" fill=\"" << color
        << "\" fill-opacity=\"0.15\" stroke=\"none\" points=\""
        << points_of(p.q_lo, false) << points_of(p.q_hi, true) << "\"/>\n";
    svg << "<polyline class=\"mean\" id=\"mean-" << p.policy << "\" fill=\"none\" stroke=\""
        << color << "\" stroke-width=\"1.5\" points=\""
        << points_of(p.mean, false) << "\"/>\n";
    ++ci;
  }
  int oi = 0;
  for (const auto& [name, v] : options.overlays) {
    svg << "<polyline class=\"overlay\" id=\"overlay-" << oi++
        << "\" fill=\"none\" stroke=\"#444\" stroke-dasharray=\"6,4\" "
           "stroke-width=\"1\" points=\""
        << points_of(v, false) << "\"/>\n";
  }

  // Axes with five ticks each.
  svg << "<line x1=\"" << ML << "\" y1=\"" << MT + PH << "\" x2=\"" << ML + PW
      << "\" y2=\"" << MT + PH << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << ML << "\" y1=\"" << MT << "\" x2=\"" << ML
      << "\" y2=\"" << MT + PH << "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double fx = xmin + (xmax - xmin) * k / 4.0;
    const double fy = ymin + (ymax - ymin) * k / 4.0;
    const double vx = options.log_x ? std::pow(10.0, fx) : fx;
    const double vy = options.log_y ? std::pow(10.0, fy) : fy;
    const double gx = ML + PW * k / 4.0;
    const double gy = MT + PH - PH * k / 4.0;
    svg << "<line x1=\"" << gx << "\" y1=\"" << MT + PH << "\" x2=\"" << gx
        << "\" y2=\"" << MT + PH + 5 << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << gx << "\" y=\"" << MT + PH + 20
        << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt_tick(vx)
        << "</text>\n";
    svg << "<line x1=\"" << ML - 5 << "\" y1=\"" << gy << "\" x2=\"" << ML
        << "\" y2=\"" << gy << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << ML - 8 << "\" y=\"" << gy + 4
        << "\" font-size=\"11\" text-anchor=\"end\">" << fmt_tick(vy)
        << "</text>\n";
  }
  svg << "<text x=\"" << ML + PW / 2 << "\" y=\"" << H - 10
      << "\" font-size=\"13\" text-anchor=\"middle\">round t</text>\n";
  svg << "<text x=\"18\" y=\"" << MT + PH / 2
      << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << MT + PH / 2 << ")\">regret</text>\n";

  // Legend.
  double ly = MT + 10;
  ci = 0;
  for (const PolicyAggregate& p : agg.policies) {
    const char* color = kPalette[ci % 8];
    svg << "<line x1=\"" << ML + PW + 10 << "\" y1=\"" << ly << "\" x2=\""
        << ML + PW + 34 << "\" y2=\"" << ly << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n<text x=\"" << ML + PW + 40 << "\" y=\""
        << ly + 4 << "\" font-size=\"12\">" << p.policy << "</text>\n";
    ly += 18;
    ++ci;
  }
  for (const auto& [name, v] : options.overlays) {
    svg << "<line x1=\"" << ML + PW + 10 << "\" y1=\"" << ly << "\" x2=\""
        << ML + PW + 34 << "\" y2=\"" << ly
        << "\" stroke=\"#444\" stroke-dasharray=\"6,4\"/>\n<text x=\""
        << ML + PW + 40 << "\" y=\"" << ly + 4 << "\" font-size=\"12\">" << name
        << "</text>\n";
    ly += 18;
  }
  svg << "</svg>\n";

  auto out = open_out(path);
  out << svg.str();
}

}  // namespace rotband
