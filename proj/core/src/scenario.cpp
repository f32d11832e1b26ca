#include "edge_assign/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "edge_assign/errors.hpp"
#include "edge_assign/random.hpp"
#include "json.hpp"

namespace edge_assign {

using nlohmann::json;

namespace {

constexpr int kConfigVersion = 1;
constexpr int kScenarioVersion = 1;
constexpr const char* kScenarioFormat = "edge-assign-scenario";

constexpr std::uint64_t kDeviceStream = 1;
constexpr std::uint64_t kServerStream = 2;

struct BuiltinProfile {
  const char* name;
  double upload_kb;
  double workload_mi;
  double deadline_s;
};

constexpr BuiltinProfile kBuiltins[] = {
    {"augmented_reality", 1500.0, 12000.0, 1.5},
    {"health", 200.0, 6000.0, 1.0},
    {"infotainment", 250.0, 15000.0, 2.0},
};

}  // namespace

std::string_view label(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::ia: return "ia";
    case MechanismKind::da: return "da";
    case MechanismKind::energy: return "energy";
    case MechanismKind::price: return "price";
    case MechanismKind::hoda: return "hoda";
    case MechanismKind::oracle: return "oracle";
  }
  return "ia";
}

MechanismKind parse_mechanism(std::string_view name) {
  for (auto k : {MechanismKind::ia, MechanismKind::da, MechanismKind::energy,
                 MechanismKind::price, MechanismKind::hoda, MechanismKind::oracle})
    if (label(k) == name) return k;
  throw ConfigError("mechanism", "unknown mechanism '" + std::string(name) + "'");
}

std::string_view label(BandwidthMode mode) {
  return mode == BandwidthMode::fixed ? "fixed" : "equal_split";
}

BandwidthMode parse_bandwidth_mode(std::string_view name) {
  if (name == "fixed") return BandwidthMode::fixed;
  if (name == "equal_split") return BandwidthMode::equal_split;
  throw ConfigError("bandwidth_mode", "expected fixed or equal_split, got '" +
                                          std::string(name) + "'");
}

std::string_view label(GainModel model) {
  return model == GainModel::log2_m ? "log2_m" : "log10_km";
}

GainModel parse_gain_model(std::string_view name) {
  if (name == "log2_m") return GainModel::log2_m;
  if (name == "log10_km") return GainModel::log10_km;
  throw ConfigError("radio.gain_model", "expected log2_m or log10_km, got '" +
                                            std::string(name) + "'");
}

AppProfile builtin_profile(std::string_view name) {
  for (const auto& b : kBuiltins)
    if (name == b.name)
      return AppProfile{b.name, b.upload_kb * 8000.0, b.workload_mi, b.deadline_s};
  throw ConfigError("app_mix", "unknown application '" + std::string(name) + "'");
}

std::vector<std::string> builtin_profile_names() {
  std::vector<std::string> names;
  for (const auto& b : kBuiltins) names.emplace_back(b.name);
  return names;
}

std::vector<AppShare> effective_app_mix(const Config& config) {
  if (!config.app_mix.empty()) return config.app_mix;
  std::vector<AppShare> mix;
  const double w = 1.0 / static_cast<double>(std::size(kBuiltins));
  for (const auto& b : kBuiltins) mix.push_back({builtin_profile(b.name), w});
  return mix;
}

std::string app_label(const Config& config) {
  const auto mix = effective_app_mix(config);
  std::string out;
  for (const auto& share : mix) {
    if (!out.empty()) out += '+';
    out += share.profile.name;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

void check(bool ok, const std::string& key, const std::string& reason) {
  if (!ok) throw ConfigError(key, reason);
}

void check_range(const Range& r, const std::string& key, bool positive) {
  check(std::isfinite(r.lo) && std::isfinite(r.hi), key, "bounds must be finite");
  check(r.lo <= r.hi, key, "lo must not exceed hi");
  if (positive)
    check(r.lo > 0.0, key, "values must be positive");
  else
    check(r.lo >= 0.0, key, "values must be non-negative");
}

}  // namespace

void validate(const Config& c) {
  check(c.num_devices >= 1, "num_devices", "must be at least 1");
  check(c.num_servers >= 1, "num_servers", "must be at least 1");
  check(c.region_width_m > 0.0 && c.region_height_m > 0.0, "region",
        "width and height must be positive");

  double total = 0.0;
  std::set<std::string> names;
  for (const auto& share : c.app_mix) {
    check(!share.profile.name.empty(), "app_mix", "profile name must not be empty");
    check(names.insert(share.profile.name).second, "app_mix",
          "duplicate profile '" + share.profile.name + "'");
    check(share.weight >= 0.0, "app_mix", "weights must be non-negative");
    check(share.profile.mean_upload_bits > 0.0 &&
              share.profile.mean_workload_mi > 0.0 &&
              share.profile.mean_deadline_s > 0.0,
          "app_mix", "profile '" + share.profile.name + "' means must be positive");
    total += share.weight;
  }
  if (!c.app_mix.empty())
    check(std::abs(total - 1.0) <= 1e-9, "app_mix",
          "weights must sum to 1 (got " + std::to_string(total) + ")");

  check_range(c.f_local_mips, "device.f_local_mips", true);
  check_range(c.energy_per_mi, "device.energy_per_mi", true);
  check_range(c.alpha, "device.alpha", false);
  check_range(c.beta, "device.beta", false);
  check(c.alpha.lo + c.beta.lo > 0.0, "device.alpha",
        "alpha and beta lower bounds must not both be zero");
  check_range(c.budget, "device.budget", false);

  check_range(c.f_max_mips, "server.f_max_mips", true);
  check(c.capacity.lo >= 1, "server.capacity", "must be at least 1");
  check(c.capacity.lo <= c.capacity.hi, "server.capacity", "lo must not exceed hi");
  check_range(c.unit_price, "server.unit_price", false);

  check(c.bandwidth_hz > 0.0, "radio.bandwidth_hz", "must be positive");
  check(c.tx_power_w > 0.0, "radio.tx_power_w", "must be positive");
  check(c.noise_w > 0.0, "radio.noise_w", "must be positive");

  check(c.oracle_max_devices >= 1, "oracle.max_devices", "must be at least 1");
  check(c.oracle_max_servers >= 1, "oracle.max_servers", "must be at least 1");
}

// ---------------------------------------------------------------------------
// Config JSON

namespace {

class Reader {
 public:
  Reader(const json& obj, std::string prefix) : obj_(obj), prefix_(std::move(prefix)) {
    if (!obj_.is_object()) throw ConfigError(prefix_, "expected an object");
  }

  // Rejects every key not consumed through one of the accessors.
  void finish(std::initializer_list<const char*> allowed) const {
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [k, v] : obj_.items())
      if (!ok.count(k)) throw ConfigError(key(k), "unknown key");
  }

  const json* find(const char* k) const {
    auto it = obj_.find(k);
    return it == obj_.end() ? nullptr : &*it;
  }

  std::string key(const std::string& k) const {
    return prefix_.empty() ? k : prefix_ + "." + k;
  }

  void number(const char* k, double& out) const {
    if (auto* v = find(k)) {
      if (!v->is_number()) throw ConfigError(key(k), "expected a number");
      out = v->get<double>();
    }
  }

  void count(const char* k, std::size_t& out) const {
    if (auto* v = find(k)) {
      if (!v->is_number_integer() || v->get<std::int64_t>() < 0)
        throw ConfigError(key(k), "expected a non-negative integer");
      out = v->get<std::size_t>();
    }
  }

  void seed(const char* k, std::uint64_t& out) const {
    if (auto* v = find(k)) {
      if (!v->is_number_unsigned() && !(v->is_number_integer() && v->get<std::int64_t>() >= 0))
        throw ConfigError(key(k), "expected a non-negative integer");
      out = v->get<std::uint64_t>();
    }
  }

  void range(const char* k, Range& out) const {
    if (auto* v = find(k)) {
      if (v->is_number()) {
        out = {v->get<double>(), v->get<double>()};
      } else if (v->is_array() && v->size() == 2 && (*v)[0].is_number() &&
                 (*v)[1].is_number()) {
        out = {(*v)[0].get<double>(), (*v)[1].get<double>()};
      } else {
        throw ConfigError(key(k), "expected a number or [lo, hi]");
      }
    }
  }

  void int_range(const char* k, IntRange& out) const {
    if (auto* v = find(k)) {
      auto as_int = [&](const json& x) {
        if (!x.is_number_integer()) throw ConfigError(key(k), "expected integers");
        return x.get<int>();
      };
      if (v->is_number()) {
        out = {as_int(*v), as_int(*v)};
      } else if (v->is_array() && v->size() == 2) {
        out = {as_int((*v)[0]), as_int((*v)[1])};
      } else {
        throw ConfigError(key(k), "expected an integer or [lo, hi]");
      }
    }
  }

  void string(const char* k, std::string& out) const {
    if (auto* v = find(k)) {
      if (!v->is_string()) throw ConfigError(key(k), "expected a string");
      out = v->get<std::string>();
    }
  }

 private:
  const json& obj_;
  std::string prefix_;
};

json range_json(const Range& r) { return json::array({r.lo, r.hi}); }

Config config_from_json(const json& root) {
  Config c;
  Reader top(root, "");
  top.finish({"version", "num_devices", "num_servers", "region", "app_mix",
              "device", "server", "radio", "bandwidth_mode", "mechanism", "seed",
              "oracle"});

  if (auto* v = top.find("version")) {
    if (!v->is_number_integer() || v->get<int>() != kConfigVersion)
      throw ConfigError("version", "unsupported config version");
  }
  top.count("num_devices", c.num_devices);
  top.count("num_servers", c.num_servers);

  if (auto* v = top.find("region")) {
    Reader r(*v, "region");
    r.finish({"width_m", "height_m"});
    r.number("width_m", c.region_width_m);
    r.number("height_m", c.region_height_m);
  }

  if (auto* v = top.find("app_mix")) {
    if (!v->is_array()) throw ConfigError("app_mix", "expected a list");
    for (const auto& entry : *v) {
      Reader a(entry, "app_mix");
      a.finish({"name", "weight", "mean_upload_bits", "mean_workload_mi",
                "mean_deadline_s"});
      std::string name;
      a.string("name", name);
      if (name.empty()) throw ConfigError("app_mix", "every entry needs a name");
      AppShare share;
      bool builtin = false;
      for (const auto& b : builtin_profile_names()) builtin = builtin || b == name;
      share.profile = builtin ? builtin_profile(name) : AppProfile{name, 0.0, 0.0, 0.0};
      a.number("mean_upload_bits", share.profile.mean_upload_bits);
      a.number("mean_workload_mi", share.profile.mean_workload_mi);
      a.number("mean_deadline_s", share.profile.mean_deadline_s);
      if (!a.find("weight")) throw ConfigError("app_mix", "entry '" + name + "' needs a weight");
      a.number("weight", share.weight);
      c.app_mix.push_back(share);
    }
  }

  if (auto* v = top.find("device")) {
    Reader d(*v, "device");
    d.finish({"f_local_mips", "energy_per_mi", "alpha", "beta", "budget"});
    d.range("f_local_mips", c.f_local_mips);
    d.range("energy_per_mi", c.energy_per_mi);
    d.range("alpha", c.alpha);
    d.range("beta", c.beta);
    d.range("budget", c.budget);
  }

  if (auto* v = top.find("server")) {
    Reader s(*v, "server");
    s.finish({"f_max_mips", "capacity", "unit_price"});
    s.range("f_max_mips", c.f_max_mips);
    s.int_range("capacity", c.capacity);
    s.range("unit_price", c.unit_price);
  }

  if (auto* v = top.find("radio")) {
    Reader r(*v, "radio");
    r.finish({"bandwidth_hz", "tx_power_w", "noise_w", "gain_model"});
    r.number("bandwidth_hz", c.bandwidth_hz);
    r.number("tx_power_w", c.tx_power_w);
    r.number("noise_w", c.noise_w);
    std::string model(label(c.gain_model));
    r.string("gain_model", model);
    c.gain_model = parse_gain_model(model);
  }

  std::string mode(label(c.bandwidth_mode));
  top.string("bandwidth_mode", mode);
  c.bandwidth_mode = parse_bandwidth_mode(mode);

  std::string mech(label(c.mechanism));
  top.string("mechanism", mech);
  c.mechanism = parse_mechanism(mech);

  top.seed("seed", c.seed);

  if (auto* v = top.find("oracle")) {
    Reader o(*v, "oracle");
    o.finish({"max_devices", "max_servers"});
    o.count("max_devices", c.oracle_max_devices);
    o.count("max_servers", c.oracle_max_servers);
  }

  validate(c);
  return c;
}

json config_json(const Config& c) {
  json mix = json::array();
  for (const auto& share : c.app_mix)
    mix.push_back({{"name", share.profile.name},
                   {"weight", share.weight},
                   {"mean_upload_bits", share.profile.mean_upload_bits},
                   {"mean_workload_mi", share.profile.mean_workload_mi},
                   {"mean_deadline_s", share.profile.mean_deadline_s}});
  json root = {
      {"version", kConfigVersion},
      {"num_devices", c.num_devices},
      {"num_servers", c.num_servers},
      {"region", {{"width_m", c.region_width_m}, {"height_m", c.region_height_m}}},
      {"device",
       {{"f_local_mips", range_json(c.f_local_mips)},
        {"energy_per_mi", range_json(c.energy_per_mi)},
        {"alpha", range_json(c.alpha)},
        {"beta", range_json(c.beta)},
        {"budget", range_json(c.budget)}}},
      {"server",
       {{"f_max_mips", range_json(c.f_max_mips)},
        {"capacity", json::array({c.capacity.lo, c.capacity.hi})},
        {"unit_price", range_json(c.unit_price)}}},
      {"radio",
       {{"bandwidth_hz", c.bandwidth_hz},
        {"tx_power_w", c.tx_power_w},
        {"noise_w", c.noise_w},
        {"gain_model", std::string(label(c.gain_model))}}},
      {"bandwidth_mode", std::string(label(c.bandwidth_mode))},
      {"mechanism", std::string(label(c.mechanism))},
      {"seed", c.seed},
      {"oracle",
       {{"max_devices", c.oracle_max_devices}, {"max_servers", c.oracle_max_servers}}},
  };
  if (!c.app_mix.empty()) root["app_mix"] = mix;
  return root;
}

std::string read_file(const std::filesystem::path& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", std::string("cannot open ") + what + " '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace

Config parse_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("parse error: ") + e.what());
  }
  try {
    return config_from_json(root);
  } catch (const json::exception& e) {
    throw ConfigError("", std::string("invalid value: ") + e.what());
  }
}

Config load_config(const std::filesystem::path& path) {
  return parse_config(read_file(path, "config"));
}

std::string config_to_json(const Config& c) { return config_json(c).dump(2) + "\n"; }

void save_config(const Config& c, const std::filesystem::path& path) {
  write_file(path, config_to_json(c));
}

std::uint64_t config_hash(const Config& c) {
  // FNV-1a over the canonical (sorted-key, compact) serialization.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : config_json(c).dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// ---------------------------------------------------------------------------
// Generation

namespace {

double clamped_exponential(Stream& s, double mean) {
  return std::max(s.exponential(mean), kExponentialFloor * mean);
}

const AppProfile& pick_app(const std::vector<AppShare>& mix, double u) {
  double acc = 0.0;
  for (const auto& share : mix) {
    acc += share.weight;
    if (u < acc) return share.profile;
  }
  // Only reachable through rounding when u is just below 1.
  for (auto it = mix.rbegin(); it != mix.rend(); ++it)
    if (it->weight > 0.0) return it->profile;
  return mix.back().profile;
}

}  // namespace

Scenario generate(const Config& config, std::uint64_t seed) {
  validate(config);
  const auto mix = effective_app_mix(config);

  Scenario sc;
  sc.radio.noise_w = config.noise_w;
  sc.radio.gain_model = config.gain_model;
  sc.bandwidth_mode = config.bandwidth_mode;
  sc.provenance = {config_hash(config), seed};

  sc.devices.reserve(config.num_devices);
  for (std::size_t i = 0; i < config.num_devices; ++i) {
    Stream s(seed, kDeviceStream, i);
    MobileDevice md;
    md.id = i;
    md.position.x = s.uniform(0.0, config.region_width_m);
    md.position.y = s.uniform(0.0, config.region_height_m);
    const AppProfile& app = pick_app(mix, s.uniform());
    md.app = app.name;
    md.task.input_bits = clamped_exponential(s, app.mean_upload_bits);
    md.task.workload_mi = clamped_exponential(s, app.mean_workload_mi);
    md.task.deadline_s = clamped_exponential(s, app.mean_deadline_s);
    md.f_local_mips = s.uniform(config.f_local_mips.lo, config.f_local_mips.hi);
    md.energy_per_mi = s.uniform(config.energy_per_mi.lo, config.energy_per_mi.hi);
    md.alpha = s.uniform(config.alpha.lo, config.alpha.hi);
    md.beta = s.uniform(config.beta.lo, config.beta.hi);
    md.budget = s.uniform(config.budget.lo, config.budget.hi);
    md.tx_power_w = config.tx_power_w;
    sc.devices.push_back(std::move(md));
  }

  sc.servers.reserve(config.num_servers);
  for (std::size_t j = 0; j < config.num_servers; ++j) {
    Stream s(seed, kServerStream, j);
    MecServer srv;
    srv.id = j;
    srv.position.x = s.uniform(0.0, config.region_width_m);
    srv.position.y = s.uniform(0.0, config.region_height_m);
    srv.f_max_mips = s.uniform(config.f_max_mips.lo, config.f_max_mips.hi);
    srv.capacity = static_cast<int>(s.uniform_int(config.capacity.lo, config.capacity.hi));
    srv.unit_price = s.uniform(config.unit_price.lo, config.unit_price.hi);
    srv.bandwidth_hz = config.bandwidth_hz;
    sc.servers.push_back(srv);
  }
  return sc;
}

void validate(const Scenario& sc) {
  if (!(sc.radio.noise_w > 0.0)) throw std::invalid_argument("noise power must be positive");
  for (std::size_t i = 0; i < sc.devices.size(); ++i) {
    if (sc.devices[i].id != i) throw std::invalid_argument("device ids must be 0..N-1 in order");
    validate(sc.devices[i]);
  }
  for (std::size_t j = 0; j < sc.servers.size(); ++j) {
    if (sc.servers[j].id != j) throw std::invalid_argument("server ids must be 0..M-1 in order");
    validate(sc.servers[j]);
  }
}

// ---------------------------------------------------------------------------
// Scenario JSON

namespace {

std::string hex64(std::uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

std::string scenario_to_json(const Scenario& sc) {
  json devices = json::array();
  for (const auto& d : sc.devices)
    devices.push_back({{"id", d.id},
                       {"x", d.position.x},
                       {"y", d.position.y},
                       {"app", d.app},
                       {"workload_mi", d.task.workload_mi},
                       {"input_bits", d.task.input_bits},
                       {"deadline_s", d.task.deadline_s},
                       {"f_local_mips", d.f_local_mips},
                       {"tx_power_w", d.tx_power_w},
                       {"energy_per_mi", d.energy_per_mi},
                       {"alpha", d.alpha},
                       {"beta", d.beta},
                       {"budget", d.budget}});
  json servers = json::array();
  for (const auto& s : sc.servers)
    servers.push_back({{"id", s.id},
                       {"x", s.position.x},
                       {"y", s.position.y},
                       {"f_max_mips", s.f_max_mips},
                       {"capacity", s.capacity},
                       {"unit_price", s.unit_price},
                       {"bandwidth_hz", s.bandwidth_hz}});
  json root = {
      {"format", kScenarioFormat},
      {"version", kScenarioVersion},
      {"provenance", {{"config_hash", hex64(sc.provenance.config_hash)},
                      {"seed", sc.provenance.seed}}},
      {"radio", {{"noise_w", sc.radio.noise_w},
                 {"gain_model", std::string(label(sc.radio.gain_model))}}},
      {"bandwidth_mode", std::string(label(sc.bandwidth_mode))},
      {"devices", devices},
      {"servers", servers},
  };
  return root.dump(2) + "\n";
}

Scenario parse_scenario(std::string_view text) {
  try {
    const json root = json::parse(text.begin(), text.end());
    if (root.value("format", "") != kScenarioFormat)
      throw ConfigError("format", "not an edge-assign scenario file");
    if (root.value("version", 0) != kScenarioVersion)
      throw ConfigError("version", "unsupported scenario version");
    Scenario sc;
    const auto& prov = root.at("provenance");
    sc.provenance.config_hash =
        std::stoull(prov.at("config_hash").get<std::string>(), nullptr, 16);
    sc.provenance.seed = prov.at("seed").get<std::uint64_t>();
    sc.radio.noise_w = root.at("radio").at("noise_w").get<double>();
    sc.radio.gain_model =
        parse_gain_model(root.at("radio").at("gain_model").get<std::string>());
    sc.bandwidth_mode = parse_bandwidth_mode(root.at("bandwidth_mode").get<std::string>());
    for (const auto& d : root.at("devices")) {
      MobileDevice md;
      md.id = d.at("id").get<std::size_t>();
      md.position = {d.at("x").get<double>(), d.at("y").get<double>()};
      md.app = d.at("app").get<std::string>();
      md.task.workload_mi = d.at("workload_mi").get<double>();
      md.task.input_bits = d.at("input_bits").get<double>();
      md.task.deadline_s = d.at("deadline_s").get<double>();
      md.f_local_mips = d.at("f_local_mips").get<double>();
      md.tx_power_w = d.at("tx_power_w").get<double>();
      md.energy_per_mi = d.at("energy_per_mi").get<double>();
      md.alpha = d.at("alpha").get<double>();
      md.beta = d.at("beta").get<double>();
      md.budget = d.at("budget").get<double>();
      sc.devices.push_back(std::move(md));
    }
    for (const auto& s : root.at("servers")) {
      MecServer srv;
      srv.id = s.at("id").get<std::size_t>();
      srv.position = {s.at("x").get<double>(), s.at("y").get<double>()};
      srv.f_max_mips = s.at("f_max_mips").get<double>();
      srv.capacity = s.at("capacity").get<int>();
      srv.unit_price = s.at("unit_price").get<double>();
      srv.bandwidth_hz = s.at("bandwidth_hz").get<double>();
      sc.servers.push_back(srv);
    }
    validate(sc);
    return sc;
  } catch (const json::exception& e) {
    throw ConfigError("", std::string("malformed scenario file: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError("", std::string("invalid scenario: ") + e.what());
  }
}

void save_scenario(const Scenario& sc, const std::filesystem::path& path) {
  write_file(path, scenario_to_json(sc));
}

Scenario load_scenario(const std::filesystem::path& path) {
  return parse_scenario(read_file(path, "scenario"));
}

}  // namespace edge_assign
