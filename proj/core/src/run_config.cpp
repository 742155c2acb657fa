#include "auctionrl/run_config.hpp"

#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "auctionrl/errors.hpp"

namespace auctionrl {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_double(const std::string& key, const std::string& value) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (value.empty() || end != value.c_str() + value.size() || errno == ERANGE)
    throw ConfigError(key + ": bad number '" + value + "'");
  return v;
}

std::uint64_t parse_uint(const std::string& key, const std::string& value) {
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
  if (value.empty() || value.front() == '-' || end != value.c_str() + value.size() ||
      errno == ERANGE)
    throw ConfigError(key + ": bad nonnegative integer '" + value + "'");
  return v;
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= value.size()) {
    const std::size_t comma = value.find(',', pos);
    const std::string item =
        trim(comma == std::string::npos ? value.substr(pos) : value.substr(pos, comma - pos));
    out.push_back(parse_double(key, item));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

// Applies one dotted key; the single point of truth for the key schema.
void apply_key(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "data.csv") cfg.csv_path = value;
  else if (key == "data.date_column") cfg.columns.date = value;
  else if (key == "data.hour_column") cfg.columns.hour = value;
  else if (key == "data.price_column") cfg.columns.price = value;
  else if (key == "split.train_fraction") cfg.split.train_fraction = parse_double(key, value);
  else if (key == "split.seed") cfg.split.seed = parse_uint(key, value);
  else if (key == "market.costs") cfg.market.costs = parse_list(key, value);
  else if (key == "market.capacities") cfg.market.capacities = parse_list(key, value);
  else if (key == "market.price_floor") cfg.market.price_floor = parse_double(key, value);
  else if (key == "market.price_cap") cfg.market.price_cap = parse_double(key, value);
  else if (key == "ddpg.episodes") cfg.hp.episodes = parse_uint(key, value);
  else if (key == "ddpg.episode_days") cfg.hp.episode_days = parse_uint(key, value);
  else if (key == "ddpg.batch_size") cfg.hp.batch_size = parse_uint(key, value);
  else if (key == "ddpg.hidden_size") cfg.hp.hidden_size = parse_uint(key, value);
  else if (key == "ddpg.actor_lr") cfg.hp.actor_lr = parse_double(key, value);
  else if (key == "ddpg.critic_lr") cfg.hp.critic_lr = parse_double(key, value);
  else if (key == "ddpg.gamma") cfg.hp.gamma = parse_double(key, value);
  else if (key == "ddpg.tau") cfg.hp.tau = parse_double(key, value);
  else if (key == "ddpg.buffer_capacity") cfg.hp.buffer_capacity = parse_uint(key, value);
  else if (key == "ddpg.ou_theta") cfg.hp.ou_theta = parse_double(key, value);
  else if (key == "ddpg.ou_mu") cfg.hp.ou_mu = parse_double(key, value);
  else if (key == "ddpg.ou_sigma") cfg.hp.ou_sigma = parse_double(key, value);
  else if (key == "ddpg.ou_dt") cfg.hp.ou_dt = parse_double(key, value);
  else if (key == "ddpg.warmup_transitions") cfg.hp.warmup_transitions = parse_uint(key, value);
  else if (key == "ddpg.l2") cfg.hp.l2 = parse_double(key, value);
  else if (key == "ddpg.seed") cfg.hp.seed = parse_uint(key, value);
  else if (key == "run.output_dir") cfg.output_dir = value;
  else if (key == "run.checkpoint_every") cfg.checkpoint_every = parse_uint(key, value);
  else throw ConfigError("unknown configuration key '" + key + "'");
}

}  // namespace

ConfigOverride parse_override(const std::string& text) {
  const std::size_t eq = text.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("override '" + text + "' is not of the form key=value");
  return {trim(text.substr(0, eq)), trim(text.substr(eq + 1))};
}

RunConfig default_run_config() { return RunConfig{}; }

RunConfig load_run_config(const std::string& path, const std::vector<ConfigOverride>& overrides) {
  if (!std::filesystem::exists(path)) throw ConfigError("config file not found: " + path);
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);

  RunConfig cfg;
  std::string line, section;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#' || text[0] == ';') continue;
    if (text.front() == '[') {
      if (text.back() != ']')
        throw ConfigError(path + ":" + std::to_string(line_no) + ": unterminated section header");
      section = trim(text.substr(1, text.size() - 2));
      if (section.empty())
        throw ConfigError(path + ":" + std::to_string(line_no) + ": empty section name");
      continue;
    }
    const std::size_t eq = text.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key.empty())
      throw ConfigError(path + ":" + std::to_string(line_no) + ": empty key");
    if (section.empty())
      throw ConfigError(path + ":" + std::to_string(line_no) + ": key outside any [section]");
    apply_key(cfg, section + "." + key, value);
  }

  if (const char* env_out = std::getenv("AUCTION_DDPG_OUT"); env_out && *env_out)
    cfg.output_dir = env_out;

  for (const auto& [key, value] : overrides) apply_key(cfg, key, value);

  cfg.market.validate();
  cfg.hp.validate();
  if (!(cfg.split.train_fraction >= 0.0 && cfg.split.train_fraction <= 1.0))
    throw ConfigError("split.train_fraction must lie in [0, 1]");
  return cfg;
}

}  // namespace auctionrl
