#include "poscars/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace poscars {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

[[noreturn]] void bad_value(const std::string& section, const std::string& key,
                            const std::string& value, const std::string& want) {
  throw ConfigError("config: [" + section + "] " + key + " = \"" + value + "\": expected " +
                    want);
}

long long to_int(const std::string& section, const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  long long out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size()) bad_value(section, key, raw, "an integer");
  return out;
}

double to_double(const std::string& section, const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  if (lower(v) == "inf") return std::numeric_limits<double>::infinity();
  try {
    std::size_t used = 0;
    double out = std::stod(v, &used);
    if (used != v.size()) bad_value(section, key, raw, "a number");
    return out;
  } catch (const std::exception&) {
    bad_value(section, key, raw, "a number");
  }
}

bool to_bool(const std::string& section, const std::string& key, const std::string& raw) {
  const std::string v = lower(trim(raw));
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  bad_value(section, key, raw, "a boolean");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(trim(cur));
  return out;
}

std::vector<std::string> tokens(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

}  // namespace

bool IniDoc::has(const std::string& section, const std::string& key) const {
  return get(section, key).has_value();
}

std::optional<std::string> IniDoc::get(const std::string& section,
                                       const std::string& key) const {
  auto it = sections_.find(section);
  if (it == sections_.end()) return std::nullopt;
  std::optional<std::string> out;
  for (const auto& [k, v] : it->second) {
    if (k == key) out = v;
  }
  return out;
}

std::vector<std::string> IniDoc::get_all(const std::string& section,
                                         const std::string& key) const {
  std::vector<std::string> out;
  auto it = sections_.find(section);
  if (it == sections_.end()) return out;
  for (const auto& [k, v] : it->second) {
    if (k == key) out.push_back(v);
  }
  return out;
}

const std::vector<IniDoc::Entry>* IniDoc::section(const std::string& name) const {
  auto it = sections_.find(name);
  return it == sections_.end() ? nullptr : &it->second;
}

void IniDoc::set(const std::string& section, const std::string& key,
                 const std::string& value) {
  auto& entries = sections_[section];
  entries.erase(std::remove_if(entries.begin(), entries.end(),
                               [&](const Entry& e) { return e.first == key; }),
                entries.end());
  entries.emplace_back(key, value);
}

void IniDoc::append(const std::string& section, const std::string& key,
                    const std::string& value) {
  sections_[section].emplace_back(key, value);
}

void IniDoc::overlay(const IniDoc& over) {
  for (const auto& [name, entries] : over.sections_) {
    std::set<std::string> touched;
    for (const auto& [k, v] : entries) touched.insert(k);
    auto& mine = sections_[name];
    mine.erase(std::remove_if(mine.begin(), mine.end(),
                              [&](const Entry& e) { return touched.count(e.first) > 0; }),
               mine.end());
    for (const auto& e : entries) mine.push_back(e);
  }
}

IniDoc parse_ini(std::istream& is, const std::string& origin) {
  IniDoc doc;
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']' || t.size() < 3) {
        throw ConfigError(origin + ":" + std::to_string(lineno) + ": malformed section header");
      }
      section = trim(t.substr(1, t.size() - 2));
      if (section.empty()) {
        throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty section name");
      }
      doc.append(section, "", "");  // presence marker, skipped by readers
      continue;
    }
    std::size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = trim(t.substr(0, eq));
    if (key.empty()) {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
    }
    if (section.empty()) {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": key outside any section");
    }
    doc.append(section, key, trim(t.substr(eq + 1)));
  }
  return doc;
}

IniDoc parse_ini_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigNotFound("config not found: " + path);
  return parse_ini(is, path);
}

const char* default_config_text() {
  return R"ini(# Desk-scale defaults: small fat-tree, five services, stable load.
[run]
horizon = 10000
seed = 1
model_seed = 1
replications = 1
warmup = 0
slot_ms = 10
a_max = 10000
validate = false
accounting = actual
jitter_per_slot = false
dump_queues =

[control]
V = 10
alpha = 10
gamma = 1

[scheduler]
strategy = poscars
probe_ratio = 3
batch = 5

[prediction]
d_avg = 0
forecaster = perfect
false_positive_rate = 0
ma_window = 5
ewma_weight = 0.5
kalman_process_var = 1
kalman_obs_var = 1
distr_history = 100

[workload]
kind = poisson
rate = 3.3
trace_mode = counts

[model]
mode = generated
resources = 1

[generated]
topology = fat-tree
fat_tree_k = 4
nfv_per_pod = 2
jf_switches = 20
jf_degree = 4
jf_servers_per_switch = 1
jf_nfv_servers = 8
base_cost = 1
variation = 0.1
services = 5
chain_min = 3
chain_max = 5
instances_min = 2
instances_max = 4
theta_min = 2
theta_max = 2
phi_max = 10
y_max = 4
cores_min = 4
cores_max = 8
lambda_min = 1
lambda_max = 3
)ini";
}

IniDoc default_config() {
  std::istringstream is(default_config_text());
  return parse_ini(is, "<defaults>");
}

std::string apply_override(IniDoc& doc, const std::string& assignment) {
  std::size_t eq = assignment.find('=');
  if (eq == std::string::npos) {
    throw ConfigError("override \"" + assignment + "\": expected key=value");
  }
  std::string key = trim(assignment.substr(0, eq));
  std::string value = trim(assignment.substr(eq + 1));
  if (key.empty()) throw ConfigError("override \"" + assignment + "\": empty key");

  std::size_t dot = key.find('.');
  if (dot != std::string::npos) {
    std::string section = key.substr(0, dot);
    std::string name = key.substr(dot + 1);
    if (section.empty() || name.empty()) {
      throw ConfigError("override \"" + assignment + "\": malformed section.key");
    }
    doc.set(section, name, value);
    return section + "." + name;
  }
  static const std::map<std::string, std::pair<std::string, std::string>> shorthand = {
      {"V", {"control", "V"}},
      {"alpha", {"control", "alpha"}},
      {"gamma", {"control", "gamma"}},
      {"D", {"prediction", "d_avg"}},
      {"probe_ratio", {"scheduler", "probe_ratio"}},
      {"batch", {"scheduler", "batch"}},
      {"false_positive_rate", {"prediction", "false_positive_rate"}},
      {"forecaster", {"prediction", "forecaster"}},
      {"scheduler", {"scheduler", "strategy"}},
      {"rate", {"workload", "rate"}},
      {"seed", {"run", "seed"}},
      {"horizon", {"run", "horizon"}},
      {"replications", {"run", "replications"}},
  };
  auto it = shorthand.find(key);
  if (it == shorthand.end()) {
    throw ConfigError("override \"" + key + "\": unknown shorthand, use section.key");
  }
  doc.set(it->second.first, it->second.second, value);
  return it->second.first + "." + it->second.second;
}

IniDoc resolve_config(const IniDoc& doc) {
  IniDoc out = default_config();
  out.overlay(doc);
  return out;
}

namespace {

// Sections carrying free-form repeated entries for the explicit model.
bool is_model_section(const std::string& s) {
  return s == "servers" || s == "vnfs" || s == "chains" || s == "placement" || s == "costs";
}

void reject_unknown_keys(const IniDoc& resolved) {
  IniDoc defaults = default_config();
  for (const auto& [name, entries] : resolved.sections()) {
    if (is_model_section(name) || name == "sweep") continue;
    const auto* known = defaults.section(name);
    if (!known) throw ConfigError("config: unknown section [" + name + "]");
    std::set<std::string> keys;
    for (const auto& [k, v] : *known) keys.insert(k);
    for (const auto& [k, v] : entries) {
      if (!k.empty() && keys.count(k) == 0) {
        throw ConfigError("config: unknown key \"" + k + "\" in section [" + name + "]");
      }
    }
  }
}

ResourceVec parse_resource_vec(const std::string& section, const std::string& key,
                               const std::string& field, int resources) {
  ResourceVec out;
  for (const std::string& t : tokens(field)) {
    out.push_back(static_cast<int>(to_int(section, key, t)));
  }
  if (static_cast<int>(out.size()) != resources) {
    bad_value(section, key, field, std::to_string(resources) + " resource entries");
  }
  return out;
}

std::shared_ptr<const Model> parse_explicit_model(const IniDoc& doc, int resources,
                                                  std::uint64_t model_seed) {
  std::vector<Server> servers;
  for (const std::string& line : doc.get_all("servers", "server")) {
    auto f = split(line, ':');
    if (f.size() != 3) bad_value("servers", "server", line, "id : capacity : unit cost");
    Server s;
    s.id = static_cast<int>(to_int("servers", "server", f[0]));
    s.capacity = parse_resource_vec("servers", "server", f[1], resources);
    s.unit_cost.clear();
    for (const std::string& t : tokens(f[2])) {
      s.unit_cost.push_back(static_cast<int>(to_int("servers", "server", t)));
    }
    if (s.unit_cost.size() != s.capacity.size()) {
      bad_value("servers", "server", line, "matching capacity and cost lengths");
    }
    servers.push_back(std::move(s));
  }
  if (servers.empty()) throw ConfigError("config: explicit model has no [servers] entries");
  std::sort(servers.begin(), servers.end(),
            [](const Server& a, const Server& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < servers.size(); ++i) {
    if (servers[i].id != static_cast<int>(i)) {
      throw ConfigError("config: server ids must be 0..n-1 with no gaps");
    }
  }

  Catalog catalog;
  for (const std::string& line : doc.get_all("vnfs", "vnf")) {
    auto f = split(line, ':');
    if (f.size() != 6) {
      bad_value("vnfs", "vnf", line, "id : service : position : theta : phi_max : options");
    }
    VnfSpec v;
    v.id = static_cast<int>(to_int("vnfs", "vnf", f[0]));
    v.service = static_cast<int>(to_int("vnfs", "vnf", f[1]));
    v.position = static_cast<int>(to_int("vnfs", "vnf", f[2]));
    v.theta = parse_resource_vec("vnfs", "vnf", f[3], resources);
    v.phi_max = static_cast<int>(to_int("vnfs", "vnf", f[4]));
    for (const std::string& opt : split(f[5], '|')) {
      v.options.push_back(parse_resource_vec("vnfs", "vnf", opt, resources));
    }
    catalog.vnfs.push_back(std::move(v));
  }
  std::sort(catalog.vnfs.begin(), catalog.vnfs.end(),
            [](const VnfSpec& a, const VnfSpec& b) { return a.id < b.id; });

  for (const std::string& line : doc.get_all("chains", "chain")) {
    auto f = split(line, ':');
    if (f.size() != 3) bad_value("chains", "chain", line, "service : window : vnf ids");
    ServiceChainSpec c;
    c.id = static_cast<int>(to_int("chains", "chain", f[0]));
    c.window_size = static_cast<int>(to_int("chains", "chain", f[1]));
    for (const std::string& t : tokens(f[2])) {
      c.vnfs.push_back(static_cast<int>(to_int("chains", "chain", t)));
    }
    catalog.services.push_back(std::move(c));
  }
  std::sort(catalog.services.begin(), catalog.services.end(),
            [](const ServiceChainSpec& a, const ServiceChainSpec& b) { return a.id < b.id; });

  Placement placement;
  placement.hosted.resize(servers.size());
  placement.hosts.resize(catalog.vnfs.size());
  for (const std::string& line : doc.get_all("placement", "host")) {
    auto f = split(line, ':');
    if (f.size() != 2) bad_value("placement", "host", line, "vnf : server ids");
    int vnf = static_cast<int>(to_int("placement", "host", f[0]));
    if (vnf < 0 || vnf >= static_cast<int>(catalog.vnfs.size())) {
      bad_value("placement", "host", line, "a declared vnf id");
    }
    for (const std::string& t : tokens(f[1])) {
      int server = static_cast<int>(to_int("placement", "host", t));
      if (server < 0 || server >= static_cast<int>(servers.size())) {
        bad_value("placement", "host", line, "declared server ids");
      }
      placement.hosts[static_cast<std::size_t>(vnf)].push_back(server);
      placement.hosted[static_cast<std::size_t>(server)].push_back(vnf);
    }
  }
  for (auto& v : placement.hosts) std::sort(v.begin(), v.end());
  for (auto& v : placement.hosted) std::sort(v.begin(), v.end());

  CommCostMatrix comm;
  const int n = static_cast<int>(servers.size());
  comm.cost.assign(static_cast<std::size_t>(n),
                   std::vector<double>(static_cast<std::size_t>(n), kUnreachableCost));
  comm.hops.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), -1));
  std::vector<std::string> rows = doc.get_all("costs", "w");
  if (static_cast<int>(rows.size()) != n) {
    throw ConfigError("config: [costs] needs one w row per server");
  }
  for (const std::string& line : rows) {
    auto f = split(line, ':');
    if (f.size() != 2) bad_value("costs", "w", line, "server : cost row");
    int i = static_cast<int>(to_int("costs", "w", f[0]));
    if (i < 0 || i >= n) bad_value("costs", "w", line, "a declared server id");
    auto vals = tokens(f[1]);
    if (static_cast<int>(vals.size()) != n) bad_value("costs", "w", line, "n cost entries");
    for (int j = 0; j < n; ++j) {
      double c = to_double("costs", "w", vals[static_cast<std::size_t>(j)]);
      comm.cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = c;
      comm.hops[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          std::isfinite(c) ? 1 : -1;
    }
  }
  for (int i = 0; i < n; ++i) comm.hops[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 0;

  (void)model_seed;
  return std::make_shared<const Model>(
      assemble_model(std::move(servers), std::move(catalog), std::move(placement),
                     std::move(comm)));
}

}  // namespace

SimulationConfig config_from_ini(const IniDoc& resolved) {
  reject_unknown_keys(resolved);
  auto str = [&](const std::string& s, const std::string& k) { return *resolved.get(s, k); };
  auto num = [&](const std::string& s, const std::string& k) {
    return to_int(s, k, str(s, k));
  };
  auto dbl = [&](const std::string& s, const std::string& k) {
    return to_double(s, k, str(s, k));
  };
  auto flag = [&](const std::string& s, const std::string& k) {
    return to_bool(s, k, str(s, k));
  };

  SimulationConfig cfg;
  cfg.horizon = num("run", "horizon");
  cfg.seed = static_cast<std::uint64_t>(num("run", "seed"));
  cfg.model_seed = static_cast<std::uint64_t>(num("run", "model_seed"));
  cfg.replications = static_cast<int>(num("run", "replications"));
  cfg.warmup = num("run", "warmup");
  cfg.slot_ms = dbl("run", "slot_ms");
  cfg.a_max = static_cast<int>(num("run", "a_max"));
  cfg.validate = flag("run", "validate");
  cfg.jitter_per_slot = flag("run", "jitter_per_slot");
  cfg.dump_queues = str("run", "dump_queues");
  {
    std::string acc = lower(str("run", "accounting"));
    if (acc == "actual") {
      cfg.accounting = CostAccounting::Actual;
    } else if (acc == "rate") {
      cfg.accounting = CostAccounting::Rate;
    } else {
      bad_value("run", "accounting", acc, "actual or rate");
    }
  }
  if (cfg.horizon < 1) throw ConfigError("config: horizon must be >= 1");
  if (cfg.replications < 1) throw ConfigError("config: replications must be >= 1");
  if (cfg.warmup < 0 || cfg.warmup >= cfg.horizon) {
    throw ConfigError("config: warmup must be in [0, horizon)");
  }
  if (!(cfg.slot_ms > 0)) throw ConfigError("config: slot_ms must be positive");
  if (cfg.a_max < 1) throw ConfigError("config: a_max must be >= 1");

  cfg.control.V = dbl("control", "V");
  cfg.control.alpha = dbl("control", "alpha");
  cfg.control.gamma = dbl("control", "gamma");
  if (cfg.control.V < 0 || cfg.control.alpha < 0 || cfg.control.gamma < 0) {
    throw ConfigError("config: V, alpha and gamma must be non-negative");
  }

  cfg.strategy.variant = variant_from_string(lower(str("scheduler", "strategy")));
  cfg.strategy.probe_ratio = static_cast<int>(num("scheduler", "probe_ratio"));
  cfg.strategy.batch = static_cast<int>(num("scheduler", "batch"));
  if (cfg.strategy.probe_ratio < 1) throw ConfigError("config: probe_ratio must be >= 1");
  if (cfg.strategy.batch < 1) throw ConfigError("config: batch must be >= 1");

  cfg.forecaster.kind = forecast_kind_from_string(lower(str("prediction", "forecaster")));
  cfg.forecaster.fp_rate = dbl("prediction", "false_positive_rate");
  cfg.forecaster.ma_window = static_cast<int>(num("prediction", "ma_window"));
  cfg.forecaster.ewma_weight = dbl("prediction", "ewma_weight");
  cfg.forecaster.kalman_process_var = dbl("prediction", "kalman_process_var");
  cfg.forecaster.kalman_obs_var = dbl("prediction", "kalman_obs_var");
  cfg.forecaster.distr_history = static_cast<int>(num("prediction", "distr_history"));
  if (cfg.forecaster.fp_rate < 0) {
    throw ConfigError("config: false_positive_rate must be non-negative");
  }
  if (cfg.forecaster.ma_window < 1) throw ConfigError("config: ma_window must be >= 1");
  if (cfg.forecaster.ewma_weight < 0 || cfg.forecaster.ewma_weight > 1) {
    throw ConfigError("config: ewma_weight must lie in [0, 1]");
  }
  if (!(cfg.forecaster.kalman_obs_var >= 0) || !(cfg.forecaster.kalman_process_var >= 0)) {
    throw ConfigError("config: kalman variances must be non-negative");
  }
  if (cfg.forecaster.distr_history < 1) {
    throw ConfigError("config: distr_history must be >= 1");
  }

  {
    std::string kind = lower(str("workload", "kind"));
    if (kind == "poisson") {
      cfg.workload.kind = WorkloadSpec::Kind::Poisson;
    } else if (kind == "trace") {
      cfg.workload.kind = WorkloadSpec::Kind::Trace;
    } else {
      bad_value("workload", "kind", kind, "poisson or trace");
    }
    cfg.workload.rate = dbl("workload", "rate");
    if (cfg.workload.rate < 0) throw ConfigError("config: rate must be non-negative");
    cfg.workload.traces = resolved.get_all("workload", "trace");
    std::string mode = lower(str("workload", "trace_mode"));
    if (mode == "counts") {
      cfg.workload.trace_mode = TraceMode::Counts;
    } else if (mode == "timestamps") {
      cfg.workload.trace_mode = TraceMode::Timestamps;
    } else {
      bad_value("workload", "trace_mode", mode, "counts or timestamps");
    }
    if (cfg.workload.kind == WorkloadSpec::Kind::Trace && cfg.workload.traces.empty()) {
      throw ConfigError("config: workload kind trace needs at least one trace path");
    }
  }

  int resources = static_cast<int>(num("model", "resources"));
  if (resources < 1) throw ConfigError("config: resources must be >= 1");
  std::string mode = lower(str("model", "mode"));
  if (mode == "generated") {
    if (resources != 1) {
      throw ConfigError("config: generated models use a single resource type");
    }
    GenSpec& g = cfg.gen;
    std::string topo = lower(str("generated", "topology"));
    if (topo == "fat-tree") {
      g.topology = GenSpec::Topology::FatTree;
    } else if (topo == "jellyfish") {
      g.topology = GenSpec::Topology::Jellyfish;
    } else {
      bad_value("generated", "topology", topo, "fat-tree or jellyfish");
    }
    g.fat_k = static_cast<int>(num("generated", "fat_tree_k"));
    g.nfv_per_pod = static_cast<int>(num("generated", "nfv_per_pod"));
    g.jf_switches = static_cast<int>(num("generated", "jf_switches"));
    g.jf_degree = static_cast<int>(num("generated", "jf_degree"));
    g.jf_servers_per_switch = static_cast<int>(num("generated", "jf_servers_per_switch"));
    g.jf_nfv = static_cast<int>(num("generated", "jf_nfv_servers"));
    g.base_cost = dbl("generated", "base_cost");
    g.variation = dbl("generated", "variation");
    g.services = static_cast<int>(num("generated", "services"));
    g.chain_min = static_cast<int>(num("generated", "chain_min"));
    g.chain_max = static_cast<int>(num("generated", "chain_max"));
    g.instances_min = static_cast<int>(num("generated", "instances_min"));
    g.instances_max = static_cast<int>(num("generated", "instances_max"));
    g.theta_min = static_cast<int>(num("generated", "theta_min"));
    g.theta_max = static_cast<int>(num("generated", "theta_max"));
    g.phi_max = static_cast<int>(num("generated", "phi_max"));
    g.y_max = static_cast<int>(num("generated", "y_max"));
    g.cores_min = static_cast<int>(num("generated", "cores_min"));
    g.cores_max = static_cast<int>(num("generated", "cores_max"));
    g.lambda_min = static_cast<int>(num("generated", "lambda_min"));
    g.lambda_max = static_cast<int>(num("generated", "lambda_max"));
    g.d_avg = static_cast<int>(num("prediction", "d_avg"));
    if (g.d_avg < 0) throw ConfigError("config: d_avg must be non-negative");
  } else if (mode == "explicit") {
    cfg.explicit_model = parse_explicit_model(resolved, resources, cfg.model_seed);
    if (is_learned(cfg.forecaster.kind)) {
      for (const auto& s : cfg.explicit_model->catalog.services) {
        if (s.window_size != 1) {
          throw ConfigError(
              "config: learned forecasters need window size 1 on every chain");
        }
      }
    }
  } else {
    bad_value("model", "mode", mode, "generated or explicit");
  }
  return cfg;
}

nlohmann::json config_echo(const IniDoc& resolved) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [name, entries] : resolved.sections()) {
    nlohmann::json sec = nlohmann::json::object();
    for (const auto& [k, v] : entries) {
      if (k.empty()) continue;  // section-presence marker
      if (sec.contains(k)) {
        if (!sec[k].is_array()) sec[k] = nlohmann::json::array({sec[k]});
        sec[k].push_back(v);
      } else {
        sec[k] = v;
      }
    }
    out[name] = std::move(sec);
  }
  return out;
}

SweepSpec sweep_from_ini(const IniDoc& doc) {
  SweepSpec spec;
  auto axis = doc.get("sweep", "axis");
  if (!axis) throw ConfigError("sweep: missing [sweep] axis");
  spec.axis = *axis;
  spec.values = doc.get_all("sweep", "value");
  if (spec.values.empty()) throw ConfigError("sweep: needs at least one value");
  static const std::set<std::string> axes = {"V", "D", "probe_ratio", "false_positive_rate",
                                             "scheduler", "rate"};
  if (axes.count(spec.axis) == 0) {
    throw ConfigError("sweep: unknown axis \"" + spec.axis + "\"");
  }
  for (const auto& [name, entries] : doc.sections()) {
    if (name == "sweep") continue;
    for (const auto& [k, v] : entries) {
      if (k.empty()) continue;
      spec.base.append(name, k, v);
    }
  }
  return spec;
}

void apply_axis(IniDoc& doc, const std::string& axis, const std::string& value) {
  apply_override(doc, axis + "=" + value);
}

}  // namespace poscars
