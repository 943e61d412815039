#include "skirental/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "skirental/errors.hpp"

namespace skirental {

using nlohmann::json;

const char* to_string(ExperimentKind kind) noexcept {
  switch (kind) {
    case ExperimentKind::Compare: return "compare";
    case ExperimentKind::Regret: return "regret";
    case ExperimentKind::Bounds: return "bounds";
  }
  return "unknown";
}

namespace {

struct WrongType {};

// Reads from one JSON object and remembers which keys were consumed so the
// leftovers can be reported.
class Reader {
 public:
  Reader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw ConfigError(where("") + ": expected an object");
  }

  template <class T>
  void get(const char* key, T& out) {
    seen_.insert(key);
    auto it = obj_.find(key);
    if (it == obj_.end()) return;
    try {
      out = convert<T>(*it);
    } catch (const json::exception&) {
      throw ConfigError(where(key) + ": wrong type");
    } catch (const WrongType&) {
      throw ConfigError(where(key) + ": wrong type");
    }
  }

  template <class T>
  void get_optional(const char* key, std::optional<T>& out) {
    seen_.insert(key);
    auto it = obj_.find(key);
    if (it == obj_.end()) return;
    if (it->is_null()) {
      out.reset();
      return;
    }
    try {
      out = convert<T>(*it);
    } catch (const json::exception&) {
      throw ConfigError(where(key) + ": wrong type");
    } catch (const WrongType&) {
      throw ConfigError(where(key) + ": wrong type");
    }
  }

  // Null when absent, so callers can recurse unconditionally.
  const json* child(const char* key) {
    seen_.insert(key);
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  std::string where(const std::string& key) const {
    if (key.empty()) return path_.empty() ? "config" : path_;
    return path_.empty() ? key : path_ + "." + key;
  }

  void finish() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      if (!seen_.count(it.key())) throw ConfigError("unknown config key '" + where(it.key()) + "'");
    }
  }

 private:
  template <class T>
  static T convert(const json& v) {
    // nlohmann converts between number kinds silently; be strict about the
    // sign and integrality of integer fields.
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) throw WrongType{};
      return v.get<bool>();
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) throw WrongType{};
      if constexpr (std::is_unsigned_v<T>) {
        if (!v.is_number_unsigned() && v.get<std::int64_t>() < 0) {
          throw WrongType{};
        }
      }
      return v.get<T>();
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) throw WrongType{};
      return v.get<T>();
    } else {
      return v.get<T>();
    }
  }

  const json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

IntRange read_range(Reader& r, const char* key, IntRange fallback) {
  std::vector<std::int64_t> pair{fallback.lo, fallback.hi};
  r.get(key, pair);
  if (pair.size() != 2) throw ConfigError(r.where(key) + ": expected [lo, hi]");
  if (pair[0] > pair[1]) throw ConfigError(r.where(key) + ": lo must be <= hi");
  return {pair[0], pair[1]};
}

std::pair<double, double> read_pair(Reader& r, const char* key, double lo, double hi) {
  std::vector<double> pair{lo, hi};
  r.get(key, pair);
  if (pair.size() != 2) throw ConfigError(r.where(key) + ": expected [lo, hi]");
  if (pair[0] > pair[1]) throw ConfigError(r.where(key) + ": lo must be <= hi");
  return {pair[0], pair[1]};
}

void read_compare(const json& j, CompareScenario& c) {
  Reader r(j, "compare");
  r.get("b", c.b);
  r.get("sigmas", c.sigmas);
  r.get("lambdas", c.lambdas);
  r.get("trials", c.trials);
  r.finish();
  if (c.b < 2) throw ConfigError("compare.b: must be >= 2");
  if (c.trials < 1) throw ConfigError("compare.trials: must be >= 1");
  if (c.sigmas.empty()) throw ConfigError("compare.sigmas: must be non-empty");
  for (double s : c.sigmas) {
    if (!(s >= 0.0)) throw ConfigError("compare.sigmas: entries must be >= 0");
  }
  if (c.lambdas.empty()) throw ConfigError("compare.lambdas: must be non-empty");
  for (double l : c.lambdas) {
    if (!(l > 0.0 && l <= 1.0)) throw ConfigError("compare.lambdas: entries must lie in (0, 1]");
  }
}

void read_sweep(const json& j, RegretSweep& s) {
  Reader r(j, "regret.sweep");
  r.get("lambda", s.lambdas);
  r.get("ski_experts", s.ski_experts);
  r.get("buy_experts", s.buy_experts);
  r.finish();
}

void read_regret(const json& j, Config& cfg) {
  Reader r(j, "regret");
  LearnerConfig& l = cfg.regret;
  r.get("horizon", l.horizon);
  r.get("buy_experts", l.buy_experts);
  r.get("ski_experts", l.ski_experts);
  l.buy_cost_range = read_range(r, "buy_cost_range", l.buy_cost_range);
  l.season_range = read_range(r, "season_range", l.season_range);
  std::tie(l.gamma_min, l.gamma_max) = read_pair(r, "gamma_range", l.gamma_min, l.gamma_max);
  std::tie(l.eta_min, l.eta_max) = read_pair(r, "eta_range", l.eta_min, l.eta_max);
  r.get("noise_bound", l.noise_bound);
  r.get("lambda", l.lambda);
  r.get("seeds", cfg.regret_seeds);
  r.get("ski_loss_scale", l.ski_loss_scale);
  r.get("buy_loss_scale", l.buy_loss_scale);
  r.get_optional("ski_rate", l.ski_rate);
  r.get_optional("buy_rate_scale", l.buy_rate_scale);
  r.get("delta", cfg.regret_delta);
  if (const json* s = r.child("sweep")) read_sweep(*s, cfg.sweep);
  r.finish();

  if (l.horizon < 1) throw ConfigError("regret.horizon: must be >= 1");
  if (l.buy_experts < 1) throw ConfigError("regret.buy_experts: must be >= 1");
  if (l.ski_experts < 1) throw ConfigError("regret.ski_experts: must be >= 1");
  if (l.buy_cost_range.lo < 2) throw ConfigError("regret.buy_cost_range: costs must be >= 2");
  if (l.season_range.lo < 1) throw ConfigError("regret.season_range: lengths must be >= 1");
  if (!(l.gamma_min >= 0.0)) throw ConfigError("regret.gamma_range: variances must be >= 0");
  if (!(l.eta_min >= 0.0)) throw ConfigError("regret.eta_range: variances must be >= 0");
  if (!(l.noise_bound >= 0.0)) throw ConfigError("regret.noise_bound: must be >= 0");
  if (!(l.lambda > 0.0 && l.lambda <= 1.0)) throw ConfigError("regret.lambda: must lie in (0, 1]");
  if (cfg.regret_seeds < 1) throw ConfigError("regret.seeds: must be >= 1");
  if (!(l.ski_loss_scale > 0.0)) throw ConfigError("regret.ski_loss_scale: must be > 0");
  if (!(l.buy_loss_scale > 0.0)) throw ConfigError("regret.buy_loss_scale: must be > 0");
  if (l.ski_rate && !(*l.ski_rate >= 0.0)) throw ConfigError("regret.ski_rate: must be >= 0");
  if (l.buy_rate_scale && !(*l.buy_rate_scale >= 0.0)) {
    throw ConfigError("regret.buy_rate_scale: must be >= 0");
  }
  if (!(cfg.regret_delta > 0.0 && cfg.regret_delta < 1.0)) {
    throw ConfigError("regret.delta: must lie in (0, 1)");
  }
  for (double v : cfg.sweep.lambdas) {
    if (!(v > 0.0 && v <= 1.0)) throw ConfigError("regret.sweep.lambda: entries must lie in (0, 1]");
  }
  for (auto v : cfg.sweep.ski_experts) {
    if (v < 1) throw ConfigError("regret.sweep.ski_experts: entries must be >= 1");
  }
  for (auto v : cfg.sweep.buy_experts) {
    if (v < 1) throw ConfigError("regret.sweep.buy_experts: entries must be >= 1");
  }
}

void read_bounds(const json& j, BoundsArgs& b) {
  Reader r(j, "bounds");
  r.get("b", b.b);
  r.get("lambda", b.lambda);
  r.get("eta", b.eta);
  r.get_optional("opt", b.opt);
  r.get("delta", b.delta);
  r.get_optional("epsilon", b.epsilon);
  r.get("Delta", b.gap);
  r.get("m", b.m);
  r.get("c", b.c);
  r.get("T", b.horizon);
  r.get("n", b.n);
  r.get_optional("B", b.loss_bound);
  r.finish();
}

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

std::vector<RegretScenario> Config::regret_scenarios() const {
  const std::vector<double> lambdas = sweep.lambdas.empty() ? std::vector<double>{regret.lambda} : sweep.lambdas;
  const std::vector<std::size_t> ns =
      sweep.ski_experts.empty() ? std::vector<std::size_t>{regret.ski_experts} : sweep.ski_experts;
  const std::vector<std::size_t> ms =
      sweep.buy_experts.empty() ? std::vector<std::size_t>{regret.buy_experts} : sweep.buy_experts;
  std::vector<RegretScenario> out;
  for (double lam : lambdas) {
    for (std::size_t n : ns) {
      for (std::size_t m : ms) {
        RegretScenario s;
        s.learner = regret;
        s.learner.lambda = lam;
        s.learner.ski_experts = n;
        s.learner.buy_experts = m;
        s.learner.loss_mode = loss_mode;
        s.seeds = regret_seeds;
        out.push_back(std::move(s));
      }
    }
  }
  return out;
}

Config config_from_json(const json& doc) {
  Config cfg;
  Reader r(doc, "");
  std::string kind = to_string(cfg.kind);
  r.get("kind", kind);
  if (kind == "compare") {
    cfg.kind = ExperimentKind::Compare;
  } else if (kind == "regret") {
    cfg.kind = ExperimentKind::Regret;
  } else if (kind == "bounds") {
    cfg.kind = ExperimentKind::Bounds;
  } else {
    throw ConfigError("kind: expected compare, regret or bounds, got '" + kind + "'");
  }
  r.get("seed", cfg.master_seed);
  r.get("output_dir", cfg.output_dir);
  std::string mode = to_string(cfg.loss_mode);
  r.get("loss_mode", mode);
  try {
    cfg.loss_mode = parse_loss_mode(mode);
  } catch (const std::invalid_argument&) {
    throw ConfigError("loss_mode: expected expected or sampled, got '" + mode + "'");
  }
  r.get("threads", cfg.threads);
  r.get("chart", cfg.chart);
  if (const json* c = r.child("compare")) read_compare(*c, cfg.compare);
  if (const json* g = r.child("regret")) read_regret(*g, cfg);
  if (const json* b = r.child("bounds")) read_bounds(*b, cfg.bounds);
  r.finish();
  if (cfg.threads < 1) throw ConfigError("threads: must be >= 1");
  cfg.regret.loss_mode = cfg.loss_mode;
  return cfg;
}

json config_to_json(const Config& cfg) {
  const LearnerConfig& l = cfg.regret;
  const BoundsArgs& b = cfg.bounds;
  json j;
  j["kind"] = to_string(cfg.kind);
  j["seed"] = cfg.master_seed;
  j["output_dir"] = cfg.output_dir;
  j["loss_mode"] = to_string(cfg.loss_mode);
  j["threads"] = cfg.threads;
  j["chart"] = cfg.chart;
  j["compare"] = {{"b", cfg.compare.b},
                  {"sigmas", cfg.compare.sigmas},
                  {"lambdas", cfg.compare.lambdas},
                  {"trials", cfg.compare.trials}};
  j["regret"] = {{"horizon", l.horizon},
                 {"buy_experts", l.buy_experts},
                 {"ski_experts", l.ski_experts},
                 {"buy_cost_range", {l.buy_cost_range.lo, l.buy_cost_range.hi}},
                 {"season_range", {l.season_range.lo, l.season_range.hi}},
                 {"gamma_range", {l.gamma_min, l.gamma_max}},
                 {"eta_range", {l.eta_min, l.eta_max}},
                 {"noise_bound", l.noise_bound},
                 {"lambda", l.lambda},
                 {"seeds", cfg.regret_seeds},
                 {"ski_loss_scale", l.ski_loss_scale},
                 {"buy_loss_scale", l.buy_loss_scale},
                 {"ski_rate", optional_json(l.ski_rate)},
                 {"buy_rate_scale", optional_json(l.buy_rate_scale)},
                 {"delta", cfg.regret_delta},
                 {"sweep",
                  {{"lambda", cfg.sweep.lambdas},
                   {"ski_experts", cfg.sweep.ski_experts},
                   {"buy_experts", cfg.sweep.buy_experts}}}};
  j["bounds"] = {{"b", b.b},         {"lambda", b.lambda},
                 {"eta", b.eta},     {"opt", optional_json(b.opt)},
                 {"delta", b.delta}, {"epsilon", optional_json(b.epsilon)},
                 {"Delta", b.gap},   {"m", b.m},
                 {"c", b.c},         {"T", b.horizon},
                 {"n", b.n},         {"B", optional_json(b.loss_bound)}};
  return j;
}

Config parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return config_from_json(doc);
}

Config load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace skirental
