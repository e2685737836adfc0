#include "qclaw/sweep.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "qclaw/claw_finders.hpp"
#include "qclaw/function_table.hpp"
#include "qclaw/query_ledger.hpp"
#include "qclaw/rng.hpp"

namespace qclaw {

const char* algo_name(Algo algo) {
  switch (algo) {
    case Algo::kBht: return "bht";
    case Algo::kHsx: return "hsx";
    case Algo::kMclaw: return "mclaw";
    case Algo::kCollision: return "collision";
  }
  throw std::logic_error("unreachable");
}

Algo algo_from_name(const std::string& name) {
  if (name == "bht") return Algo::kBht;
  if (name == "hsx") return Algo::kHsx;
  if (name == "mclaw") return Algo::kMclaw;
  if (name == "collision") return Algo::kCollision;
  throw std::invalid_argument("unknown algorithm '" + name +
                              "', expected bht, hsx, mclaw or collision");
}

std::uint64_t parse_size(const std::string& text) {
  const auto parse_u64 = [](const std::string& s) {
    std::size_t pos = 0;
    unsigned long long v = std::stoull(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters in '" + s + "'");
    return static_cast<std::uint64_t>(v);
  };
  const std::size_t caret = text.find('^');
  if (caret == std::string::npos) return parse_u64(text);
  if (text.substr(0, caret) != "2")
    throw std::invalid_argument("only powers of two are supported: '" + text + "'");
  const std::uint64_t exp = parse_u64(text.substr(caret + 1));
  if (exp >= 64) throw std::invalid_argument("exponent too large in '" + text + "'");
  return std::uint64_t{1} << exp;
}

std::uint64_t feasible_n_cap(int l) {
  if (l <= 3) return std::uint64_t{1} << 22;
  if (l == 4) return std::uint64_t{1} << 20;
  return std::uint64_t{1} << 18;
}

void SweepConfig::validate() const {
  if (l < 2) throw std::invalid_argument("l must be at least 2");
  if (l > 8) throw std::invalid_argument("l above 8 is outside the supported sweep range");
  if (algorithm == Algo::kBht && l != 2)
    throw std::invalid_argument("bht is a two-list procedure, use l=2");
  if (c_n < 1.0) throw std::invalid_argument("c_N must be at least 1");
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  if (trials < 30) throw std::invalid_argument("need at least 30 trials per N");
  if (n_list.empty()) throw std::invalid_argument("empty N list");
  std::uint64_t prev = 0;
  for (std::uint64_t n : n_list) {
    if (!std::has_single_bit(n) || n < 4)
      throw std::invalid_argument("N=" + std::to_string(n) + " is not a power of two >= 4");
    if (n <= prev) throw std::invalid_argument("N list must be strictly increasing");
    prev = n;
    if (n > feasible_n_cap(l))
      throw std::invalid_argument("N=" + std::to_string(n) +
                                  " exceeds the table budget for l=" + std::to_string(l));
    if (algorithm == Algo::kMclaw || algorithm == Algo::kCollision)
      MclawParams::build(l, n, c_n, k);  // surfaces capacity errors up front
  }
}

std::uint64_t query_cap(Algo algo, int l, std::uint64_t n, double c_n, int k) {
  if (algo == Algo::kMclaw || algo == Algo::kCollision)
    return MclawParams::build(l, n, c_n, k).qlimit;
  const Rational e = algo == Algo::kHsx ? hsx_exponent(l) : mclaw_exponent(2);
  const double scale = 169.0 * l * std::pow(c_n, 1.5) * pow_fraction(n, e.num, e.den);
  return static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(std::ceil(scale));
}

namespace {

unsigned worker_count() {
  if (const char* env = std::getenv("QCLAW_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
    return 1;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw >= 1 ? hw : 1;
}

struct TrialOutcome {
  bool success = false;
  bool verified = false;
  std::uint64_t queries = 0;
  std::vector<std::uint64_t> per_level;
};

TrialOutcome run_trial(const SweepConfig& config, std::uint64_t n, std::uint64_t trial_seed) {
  Prng rng(derive_seed(trial_seed, 0));
  const std::uint64_t cap = query_cap(config.algorithm, config.l, n, config.c_n, config.k);
  QueryLedger ledger(cap);
  TrialOutcome out;
  AlgoResult res;

  switch (config.algorithm) {
    case Algo::kBht: {
      const auto f1 = FunctionTable::sample(n, n, derive_seed(trial_seed, 1));
      const auto f2 = FunctionTable::sample(n, n, derive_seed(trial_seed, 2));
      res = bht_claw(f1, f2, 0, ledger, rng);
      if (!res.aborted())
        out.verified = verify_claw(std::get<ClawTuple>(res.solution), {f1, f2});
      break;
    }
    case Algo::kMclaw: {
      std::vector<FunctionTable> fs;
      for (int i = 0; i < config.l; ++i)
        fs.push_back(FunctionTable::sample(n, n, derive_seed(trial_seed, 1 + i)));
      const MclawParams params = MclawParams::build(config.l, n, config.c_n, config.k);
      res = mclaw(fs, params, ledger, rng);
      if (!res.aborted()) out.verified = verify_claw(std::get<ClawTuple>(res.solution), fs);
      break;
    }
    case Algo::kHsx: {
      const auto f = WideTable::sample(static_cast<std::uint64_t>(config.l) * n, n,
                                       derive_seed(trial_seed, 1));
      res = hsx_collision(f, config.l, ledger, rng);
      if (!res.aborted())
        out.verified = verify_collision(std::get<CollisionTuple>(res.solution), f);
      break;
    }
    case Algo::kCollision: {
      const auto f = WideTable::sample(static_cast<std::uint64_t>(config.l) * n, n,
                                       derive_seed(trial_seed, 1));
      const MclawParams params = MclawParams::build(config.l, n, config.c_n, config.k);
      res = collision_from_claw(f, config.l, params, ledger, rng);
      if (!res.aborted())
        out.verified = verify_collision(std::get<CollisionTuple>(res.solution), f);
      break;
    }
  }

  out.success = !res.aborted();
  out.queries = res.total_queries;
  out.per_level = std::move(res.per_level_queries);
  return out;
}

}  // namespace

std::vector<SweepRecord> run_sweep(const SweepConfig& config, SweepAudit* audit) {
  config.validate();
  const unsigned workers = worker_count();
  const int levels = config.algorithm == Algo::kBht ? 2 : config.l;

  std::vector<SweepRecord> records;
  for (std::uint64_t n : config.n_list) {
    const std::uint64_t n_seed = derive_seed(config.base_seed, n);
    std::vector<TrialOutcome> outcomes(config.trials);

    const auto work = [&](std::uint64_t trial) {
      outcomes[trial] = run_trial(config, n, derive_seed(n_seed, trial));
    };
    if (workers <= 1 || config.trials <= 1) {
      for (std::uint64_t t = 0; t < config.trials; ++t) work(t);
    } else {
      std::atomic<std::uint64_t> next{0};
      std::exception_ptr failure;
      std::mutex failure_mutex;
      std::vector<std::thread> pool;
      const unsigned spawn = static_cast<unsigned>(
          std::min<std::uint64_t>(workers, config.trials));
      for (unsigned w = 0; w < spawn; ++w) {
        pool.emplace_back([&] {
          for (;;) {
            const std::uint64_t t = next.fetch_add(1);
            if (t >= config.trials) return;
            try {
              work(t);
            } catch (...) {
              std::lock_guard<std::mutex> lock(failure_mutex);
              if (!failure) failure = std::current_exception();
              return;
            }
          }
        });
      }
      for (std::thread& th : pool) th.join();
      if (failure) std::rethrow_exception(failure);
    }

    SweepRecord rec;
    rec.algorithm = algo_name(config.algorithm);
    rec.l = config.l;
    rec.n = n;
    rec.c_n = config.c_n;
    rec.k = config.k;
    rec.trials = config.trials;
    rec.seed = config.base_seed;
    rec.mean_per_level.assign(levels, 0.0);

    double sum = 0.0;
    for (const TrialOutcome& out : outcomes) {
      if (out.success) {
        rec.successes += 1;
        if (audit) {
          audit->solutions_checked += 1;
          if (!out.verified) audit->verify_failures += 1;
        }
      }
      if (audit && out.queries > query_cap(config.algorithm, config.l, n, config.c_n, config.k))
        audit->cap_violations += 1;
      sum += static_cast<double>(out.queries);
      for (int lvl = 0; lvl < levels; ++lvl)
        rec.mean_per_level[lvl] += static_cast<double>(out.per_level[lvl]);
    }
    rec.mean_queries = sum / static_cast<double>(config.trials);
    for (double& v : rec.mean_per_level) v /= static_cast<double>(config.trials);

    double ss = 0.0;
    for (const TrialOutcome& out : outcomes) {
      const double d = static_cast<double>(out.queries) - rec.mean_queries;
      ss += d * d;
    }
    rec.stddev_queries =
        config.trials >= 2 ? std::sqrt(ss / static_cast<double>(config.trials - 1)) : 0.0;

    records.push_back(std::move(rec));
  }

  if (!config.out_path.empty()) write_sweep_csv(config.out_path, records);
  return records;
}

FitResult fit_exponent(const std::vector<SweepRecord>& records) {
  if (records.size() < 5)
    throw std::invalid_argument("fit needs at least five records");
  for (const SweepRecord& rec : records) {
    if (rec.algorithm != records.front().algorithm || rec.l != records.front().l)
      throw std::invalid_argument("fit needs records of a single (algorithm, l) pair");
    if (!(rec.mean_queries > 0.0))
      throw std::invalid_argument("fit needs positive mean_queries");
  }

  const auto n = static_cast<double>(records.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const SweepRecord& rec : records) {
    const double x = std::log(static_cast<double>(rec.n));
    const double y = std::log(rec.mean_queries);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  FitResult fit;
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;

  double ss = 0.0;
  for (const SweepRecord& rec : records) {
    const double x = std::log(static_cast<double>(rec.n));
    const double y = std::log(rec.mean_queries);
    const double d = y - (fit.intercept + fit.slope * x);
    ss += d * d;
  }
  fit.residual = std::sqrt(ss / n);

  const int l = records.front().l;
  fit.theory_exponent = records.front().algorithm == "hsx" ? hsx_exponent(l)
                                                           : mclaw_exponent(l);
  const double tol = l == 2 ? 0.05 : l == 3 ? 0.07 : 0.10;
  fit.within_tolerance =
      std::fabs(fit.slope - rational_value(fit.theory_exponent)) <= tol;
  return fit;
}

namespace {

constexpr const char* kCsvVersion = "# sweep-csv v1";
constexpr const char* kCsvHeader =
    "algorithm,l,N,c_N,k,trials,successes,mean_queries,stddev_queries,"
    "per_level_queries,seed";

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string format_c_n(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

}  // namespace

void write_sweep_csv(const std::string& path, const std::vector<SweepRecord>& records) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << kCsvVersion << '\n' << kCsvHeader << '\n';
  for (const SweepRecord& rec : records) {
    out << rec.algorithm << ',' << rec.l << ',' << rec.n << ',' << format_c_n(rec.c_n)
        << ',' << rec.k << ',' << rec.trials << ',' << rec.successes << ','
        << format_double(rec.mean_queries) << ',' << format_double(rec.stddev_queries)
        << ',';
    for (std::size_t i = 0; i < rec.mean_per_level.size(); ++i) {
      if (i) out << ';';
      out << format_double(rec.mean_per_level[i]);
    }
    out << ',' << rec.seed << '\n';
  }
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

std::vector<SweepRecord> read_sweep_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || line != kCsvVersion)
    throw std::runtime_error("'" + path + "' is not a v1 sweep CSV");
  if (!std::getline(in, line) || line != kCsvHeader)
    throw std::runtime_error("'" + path + "' has an unexpected header");

  std::vector<SweepRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(row, field, ',')) fields.push_back(field);
    if (fields.size() != 11)
      throw std::runtime_error("malformed row in '" + path + "': " + line);

    SweepRecord rec;
    rec.algorithm = fields[0];
    algo_from_name(rec.algorithm);
    rec.l = std::stoi(fields[1]);
    rec.n = std::stoull(fields[2]);
    rec.c_n = std::stod(fields[3]);
    rec.k = std::stoi(fields[4]);
    rec.trials = std::stoull(fields[5]);
    rec.successes = std::stoull(fields[6]);
    rec.mean_queries = std::stod(fields[7]);
    rec.stddev_queries = std::stod(fields[8]);
    std::stringstream levels(fields[9]);
    while (std::getline(levels, field, ';'))
      rec.mean_per_level.push_back(std::stod(field));
    rec.seed = std::stoull(fields[10]);
    records.push_back(std::move(rec));
  }
  return records;
}

SweepConfig sweep_config_from_json(const std::string& text) {
  const nlohmann::json doc = nlohmann::json::parse(text);
  SweepConfig config;
  config.algorithm = algo_from_name(doc.at("algorithm").get<std::string>());
  config.l = doc.at("l").get<int>();
  for (const auto& item : doc.at("n")) {
    if (item.is_string())
      config.n_list.push_back(parse_size(item.get<std::string>()));
    else
      config.n_list.push_back(item.get<std::uint64_t>());
  }
  if (doc.contains("c_n")) config.c_n = doc.at("c_n").get<double>();
  if (doc.contains("k")) config.k = doc.at("k").get<int>();
  if (doc.contains("trials")) config.trials = doc.at("trials").get<std::uint64_t>();
  if (doc.contains("seed")) config.base_seed = doc.at("seed").get<std::uint64_t>();
  if (doc.contains("out")) config.out_path = doc.at("out").get<std::string>();
  return config;
}

std::string sweep_config_to_json(const SweepConfig& config) {
  nlohmann::json doc;
  doc["algorithm"] = algo_name(config.algorithm);
  doc["l"] = config.l;
  doc["n"] = config.n_list;
  doc["c_n"] = config.c_n;
  doc["k"] = config.k;
  doc["trials"] = config.trials;
  doc["seed"] = config.base_seed;
  doc["out"] = config.out_path;
  return doc.dump(2);
}

}  // namespace qclaw
