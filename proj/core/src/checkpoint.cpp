#include "auctionrl/checkpoint.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "auctionrl/errors.hpp"

namespace auctionrl {

namespace {

constexpr int kFormatVersion = 1;

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_vector(std::ostream& out, const std::string& name, const std::vector<double>& v) {
  out << name << ' ' << v.size();
  for (double x : v) out << ' ' << g17(x);
  out << '\n';
}

void write_network(std::ostream& out, const std::string& name, const Network& net) {
  out << "network " << name << ' ' << net.layers.size() << '\n';
  for (const Layer& l : net.layers) {
    out << "layer " << l.in << ' ' << l.out << ' ' << activation_name(l.activation) << '\n';
    write_vector(out, "weights", l.weights);
    write_vector(out, "biases", l.biases);
  }
}

void write_optimizer(std::ostream& out, const std::string& name, const OptimizerState& opt) {
  out << "optimizer " << name << ' ' << opt.m_weights.size() << '\n';
  out << "settings " << g17(opt.learning_rate) << ' ' << g17(opt.l2) << ' ' << g17(opt.beta1) << ' '
      << g17(opt.beta2) << ' ' << g17(opt.epsilon) << ' ' << opt.step << '\n';
  for (std::size_t j = 0; j < opt.m_weights.size(); ++j) {
    write_vector(out, "m_weights", opt.m_weights[j]);
    write_vector(out, "v_weights", opt.v_weights[j]);
    write_vector(out, "m_biases", opt.m_biases[j]);
    write_vector(out, "v_biases", opt.v_biases[j]);
  }
}

// Whitespace-token reader; every mismatch surfaces as CheckpointError.
class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  std::string token() {
    std::string t;
    if (!(in_ >> t)) throw CheckpointError("unexpected end of checkpoint");
    return t;
  }

  void expect(const std::string& keyword) {
    const std::string t = token();
    if (t != keyword)
      throw CheckpointError("expected '" + keyword + "', found '" + t + "'");
  }

  double number() {
    const std::string t = token();
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size() || errno == ERANGE)
      throw CheckpointError("bad numeric token '" + t + "'");
    return v;
  }

  std::uint64_t count() {
    const std::string t = token();
    errno = 0;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(t.c_str(), &end, 10);
    if (end != t.c_str() + t.size() || errno == ERANGE || t.front() == '-')
      throw CheckpointError("bad integer token '" + t + "'");
    return v;
  }

  std::vector<double> vector(const std::string& name) {
    expect(name);
    std::vector<double> v(count());
    for (double& x : v) x = number();
    return v;
  }

 private:
  std::istream& in_;
};

Network read_network(Reader& r, const std::string& name) {
  r.expect("network");
  r.expect(name);
  Network net;
  net.layers.resize(r.count());
  for (Layer& l : net.layers) {
    r.expect("layer");
    l.in = r.count();
    l.out = r.count();
    l.activation = activation_from_name(r.token());
    l.weights = r.vector("weights");
    l.biases = r.vector("biases");
    if (l.weights.size() != l.in * l.out || l.biases.size() != l.out)
      throw CheckpointError("layer payload does not match declared shape");
  }
  for (std::size_t j = 1; j < net.layers.size(); ++j)
    if (net.layers[j].in != net.layers[j - 1].out)
      throw CheckpointError("layer dimensions do not chain");
  return net;
}

OptimizerState read_optimizer(Reader& r, const std::string& name, const Network& net) {
  r.expect("optimizer");
  r.expect(name);
  const std::uint64_t depth = r.count();
  if (depth != net.layers.size()) throw CheckpointError("optimizer depth does not match network");
  OptimizerState opt;
  r.expect("settings");
  opt.learning_rate = r.number();
  opt.l2 = r.number();
  opt.beta1 = r.number();
  opt.beta2 = r.number();
  opt.epsilon = r.number();
  opt.step = r.count();
  for (std::uint64_t j = 0; j < depth; ++j) {
    opt.m_weights.push_back(r.vector("m_weights"));
    opt.v_weights.push_back(r.vector("v_weights"));
    opt.m_biases.push_back(r.vector("m_biases"));
    opt.v_biases.push_back(r.vector("v_biases"));
    if (opt.m_weights[j].size() != net.layers[j].weights.size() ||
        opt.m_biases[j].size() != net.layers[j].biases.size())
      throw CheckpointError("optimizer moment shapes do not match network");
  }
  return opt;
}

}  // namespace

Checkpoint checkpoint_from_agent(const Agent& agent, const NormStats& stats,
                                 std::size_t episodes_completed) {
  Checkpoint ckpt;
  ckpt.policy = "network";
  ckpt.seed = agent.hp.seed;
  ckpt.episodes_completed = episodes_completed;
  ckpt.hp = agent.hp;
  ckpt.market = agent.market;
  ckpt.stats = stats;
  ckpt.actor = agent.actor;
  ckpt.critic = agent.critic;
  ckpt.target_actor = agent.target_actor;
  ckpt.target_critic = agent.target_critic;
  ckpt.actor_opt = agent.actor_opt;
  ckpt.critic_opt = agent.critic_opt;
  return ckpt;
}

Checkpoint oracle_checkpoint(const MarketConfig& market, const NormStats& stats) {
  Checkpoint ckpt;
  ckpt.policy = "oracle";
  ckpt.market = market;
  ckpt.stats = stats;
  return ckpt;
}

Agent agent_from_checkpoint(const Checkpoint& ckpt) {
  if (ckpt.policy != "network")
    throw CheckpointError("checkpoint holds no networks (policy '" + ckpt.policy + "')");
  Agent agent;
  agent.hp = ckpt.hp;
  agent.market = ckpt.market;
  agent.actor = ckpt.actor;
  agent.critic = ckpt.critic;
  agent.target_actor = ckpt.target_actor;
  agent.target_critic = ckpt.target_critic;
  agent.actor_opt = ckpt.actor_opt;
  agent.critic_opt = ckpt.critic_opt;
  return agent;
}

void save_checkpoint(const std::string& path, const Checkpoint& ckpt) {
  std::ostringstream out;
  out << "auctionrl-checkpoint " << kFormatVersion << '\n';
  out << "policy " << ckpt.policy << '\n';
  out << "seed " << ckpt.seed << '\n';
  out << "episodes_completed " << ckpt.episodes_completed << '\n';

  out << "market " << ckpt.market.modes() << '\n';
  write_vector(out, "costs", ckpt.market.costs);
  write_vector(out, "capacities", ckpt.market.capacities);
  out << "price_floor " << g17(ckpt.market.price_floor) << '\n';
  out << "price_cap " << g17(ckpt.market.price_cap) << '\n';
  out << "stats " << g17(ckpt.stats.mean) << ' ' << g17(ckpt.stats.std) << '\n';

  if (ckpt.policy == "network") {
    const Hyperparameters& hp = ckpt.hp;
    out << "hyperparameters\n";
    out << "episodes " << hp.episodes << '\n';
    out << "episode_days " << hp.episode_days << '\n';
    out << "batch_size " << hp.batch_size << '\n';
    out << "hidden_size " << hp.hidden_size << '\n';
    out << "actor_lr " << g17(hp.actor_lr) << '\n';
    out << "critic_lr " << g17(hp.critic_lr) << '\n';
    out << "gamma " << g17(hp.gamma) << '\n';
    out << "tau " << g17(hp.tau) << '\n';
    out << "buffer_capacity " << hp.buffer_capacity << '\n';
    out << "ou_theta " << g17(hp.ou_theta) << '\n';
    out << "ou_mu " << g17(hp.ou_mu) << '\n';
    out << "ou_sigma " << g17(hp.ou_sigma) << '\n';
    out << "ou_dt " << g17(hp.ou_dt) << '\n';
    out << "warmup_transitions " << hp.warmup_transitions << '\n';
    out << "l2 " << g17(hp.l2) << '\n';

    write_network(out, "actor", ckpt.actor);
    write_network(out, "critic", ckpt.critic);
    write_network(out, "target_actor", ckpt.target_actor);
    write_network(out, "target_critic", ckpt.target_critic);
    write_optimizer(out, "actor", ckpt.actor_opt);
    write_optimizer(out, "critic", ckpt.critic_opt);
  }
  out << "end\n";

  // Write to a sibling temp file first so a crash never truncates an
  // existing checkpoint.
  const std::string tmp = path + ".tmp";
  {
    std::ofstream file(tmp, std::ios::trunc);
    if (!file) throw CheckpointError("cannot open '" + tmp + "' for writing");
    file << out.str();
    file.flush();
    if (!file) throw CheckpointError("short write to '" + tmp + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw CheckpointError("cannot move checkpoint into place: " + ec.message());
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw CheckpointError("cannot open checkpoint '" + path + "'");
  Reader r(file);

  r.expect("auctionrl-checkpoint");
  if (r.count() != kFormatVersion) throw CheckpointError("unsupported checkpoint version");

  Checkpoint ckpt;
  r.expect("policy");
  ckpt.policy = r.token();
  if (ckpt.policy != "network" && ckpt.policy != "oracle")
    throw CheckpointError("unknown policy kind '" + ckpt.policy + "'");
  r.expect("seed");
  ckpt.seed = r.count();
  r.expect("episodes_completed");
  ckpt.episodes_completed = r.count();

  r.expect("market");
  const std::uint64_t modes = r.count();
  ckpt.market.costs = r.vector("costs");
  ckpt.market.capacities = r.vector("capacities");
  if (ckpt.market.costs.size() != modes || ckpt.market.capacities.size() != modes)
    throw CheckpointError("market block does not match declared mode count");
  r.expect("price_floor");
  ckpt.market.price_floor = r.number();
  r.expect("price_cap");
  ckpt.market.price_cap = r.number();
  r.expect("stats");
  ckpt.stats.mean = r.number();
  ckpt.stats.std = r.number();

  if (ckpt.policy == "network") {
    r.expect("hyperparameters");
    Hyperparameters& hp = ckpt.hp;
    r.expect("episodes");
    hp.episodes = r.count();
    r.expect("episode_days");
    hp.episode_days = r.count();
    r.expect("batch_size");
    hp.batch_size = r.count();
    r.expect("hidden_size");
    hp.hidden_size = r.count();
    r.expect("actor_lr");
    hp.actor_lr = r.number();
    r.expect("critic_lr");
    hp.critic_lr = r.number();
    r.expect("gamma");
    hp.gamma = r.number();
    r.expect("tau");
    hp.tau = r.number();
    r.expect("buffer_capacity");
    hp.buffer_capacity = r.count();
    r.expect("ou_theta");
    hp.ou_theta = r.number();
    r.expect("ou_mu");
    hp.ou_mu = r.number();
    r.expect("ou_sigma");
    hp.ou_sigma = r.number();
    r.expect("ou_dt");
    hp.ou_dt = r.number();
    r.expect("warmup_transitions");
    hp.warmup_transitions = r.count();
    r.expect("l2");
    hp.l2 = r.number();
    hp.seed = ckpt.seed;

    ckpt.actor = read_network(r, "actor");
    ckpt.critic = read_network(r, "critic");
    ckpt.target_actor = read_network(r, "target_actor");
    ckpt.target_critic = read_network(r, "target_critic");
    ckpt.actor_opt = read_optimizer(r, "actor", ckpt.actor);
    ckpt.critic_opt = read_optimizer(r, "critic", ckpt.critic);
  }
  r.expect("end");

  try {
    ckpt.market.validate();
  } catch (const ConfigError& e) {
    throw CheckpointError(std::string("invalid market block: ") + e.what());
  }
  return ckpt;
}

}  // namespace auctionrl
