#include "auctionrl/network.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "auctionrl/errors.hpp"

namespace auctionrl {

std::string activation_name(Activation a) {
  switch (a) {
    case Activation::kRelu: return "relu";
    case Activation::kTanh: return "tanh";
    case Activation::kIdentity: return "identity";
  }
  throw BadArchitectureError("unknown activation enum value");
}

Activation activation_from_name(const std::string& name) {
  if (name == "relu") return Activation::kRelu;
  if (name == "tanh") return Activation::kTanh;
  if (name == "identity") return Activation::kIdentity;
  throw BadArchitectureError("unknown activation '" + name + "'");
}

std::size_t Network::parameter_count() const {
  std::size_t n = 0;
  for (const Layer& l : layers) n += l.weights.size() + l.biases.size();
  return n;
}

namespace {

double apply_activation(Activation a, double z) {
  switch (a) {
    case Activation::kRelu: return z > 0.0 ? z : 0.0;
    case Activation::kTanh: return std::tanh(z);
    case Activation::kIdentity: return z;
  }
  return z;
}

// Derivative expressed through the pre-activation z.
double activation_grad(Activation a, double z) {
  switch (a) {
    case Activation::kRelu: return z > 0.0 ? 1.0 : 0.0;
    case Activation::kTanh: {
      const double t = std::tanh(z);
      return 1.0 - t * t;
    }
    case Activation::kIdentity: return 1.0;
  }
  return 1.0;
}

}  // namespace

Network init_network(const std::vector<std::size_t>& dims,
                     const std::vector<Activation>& activations, std::uint64_t seed) {
  if (dims.size() < 2) throw BadArchitectureError("need at least input and output dimensions");
  for (std::size_t d : dims)
    if (d == 0) throw BadArchitectureError("layer dimensions must be positive");
  if (activations.size() != dims.size() - 1)
    throw BadArchitectureError("need one activation per layer");

  std::mt19937_64 rng(seed);
  Network net;
  net.layers.resize(dims.size() - 1);
  for (std::size_t j = 0; j < net.layers.size(); ++j) {
    Layer& l = net.layers[j];
    l.in = dims[j];
    l.out = dims[j + 1];
    l.activation = activations[j];
    const double bound = std::sqrt(6.0 / static_cast<double>(l.in + l.out));
    std::uniform_real_distribution<double> dist(-bound, bound);
    l.weights.resize(l.out * l.in);
    for (double& w : l.weights) w = dist(rng);
    l.biases.assign(l.out, 0.0);
  }
  return net;
}

std::vector<double> forward(const Network& net, const std::vector<double>& input,
                            ForwardTape* tape) {
  if (net.layers.empty()) throw BadArchitectureError("forward on empty network");
  if (input.size() != net.input_dim())
    throw ShapeMismatchError("input length " + std::to_string(input.size()) + ", network expects " +
                             std::to_string(net.input_dim()));
  if (tape) {
    tape->input = input;
    tape->pre.assign(net.layers.size(), {});
    tape->post.assign(net.layers.size(), {});
  }

  std::vector<double> a = input;
  std::vector<double> z;
  for (std::size_t j = 0; j < net.layers.size(); ++j) {
    const Layer& l = net.layers[j];
    z.assign(l.out, 0.0);
    for (std::size_t r = 0; r < l.out; ++r) {
      double acc = l.biases[r];
      const double* row = l.weights.data() + r * l.in;
      for (std::size_t c = 0; c < l.in; ++c) acc += row[c] * a[c];
      z[r] = acc;
    }
    a.resize(l.out);
    for (std::size_t r = 0; r < l.out; ++r) a[r] = apply_activation(l.activation, z[r]);
    if (tape) {
      tape->pre[j] = z;
      tape->post[j] = a;
    }
  }
  return a;
}

Gradients backward(const Network& net, const ForwardTape& tape,
                   const std::vector<double>& output_grad) {
  if (tape.pre.size() != net.layers.size() || tape.post.size() != net.layers.size())
    throw ShapeMismatchError("tape does not match network depth");
  if (output_grad.size() != net.output_dim())
    throw ShapeMismatchError("output gradient length does not match network output");

  Gradients g = zero_gradients(net);
  // delta = d<output_grad, output>/d z for the current layer.
  std::vector<double> delta = output_grad;
  for (std::size_t jj = net.layers.size(); jj-- > 0;) {
    const Layer& l = net.layers[jj];
    if (tape.pre[jj].size() != l.out) throw ShapeMismatchError("tape layer shape mismatch");
    for (std::size_t r = 0; r < l.out; ++r) delta[r] *= activation_grad(l.activation, tape.pre[jj][r]);

    const std::vector<double>& below = jj == 0 ? tape.input : tape.post[jj - 1];
    double* wg = g.weights[jj].data();
    for (std::size_t r = 0; r < l.out; ++r) {
      const double d = delta[r];
      g.biases[jj][r] = d;
      double* row = wg + r * l.in;
      for (std::size_t c = 0; c < l.in; ++c) row[c] = d * below[c];
    }

    std::vector<double> next(l.in, 0.0);
    for (std::size_t r = 0; r < l.out; ++r) {
      const double d = delta[r];
      const double* row = l.weights.data() + r * l.in;
      for (std::size_t c = 0; c < l.in; ++c) next[c] += d * row[c];
    }
    delta = std::move(next);
  }
  g.input = std::move(delta);
  return g;
}

std::vector<double> backward_input(const Network& net, const ForwardTape& tape,
                                   const std::vector<double>& output_grad) {
  if (tape.pre.size() != net.layers.size())
    throw ShapeMismatchError("tape does not match network depth");
  if (output_grad.size() != net.output_dim())
    throw ShapeMismatchError("output gradient length does not match network output");

  std::vector<double> delta = output_grad;
  for (std::size_t jj = net.layers.size(); jj-- > 0;) {
    const Layer& l = net.layers[jj];
    for (std::size_t r = 0; r < l.out; ++r) delta[r] *= activation_grad(l.activation, tape.pre[jj][r]);
    std::vector<double> next(l.in, 0.0);
    for (std::size_t r = 0; r < l.out; ++r) {
      const double d = delta[r];
      const double* row = l.weights.data() + r * l.in;
      for (std::size_t c = 0; c < l.in; ++c) next[c] += d * row[c];
    }
    delta = std::move(next);
  }
  return delta;
}

Gradients zero_gradients(const Network& net) {
  Gradients g;
  g.weights.resize(net.layers.size());
  g.biases.resize(net.layers.size());
  for (std::size_t j = 0; j < net.layers.size(); ++j) {
    g.weights[j].assign(net.layers[j].weights.size(), 0.0);
    g.biases[j].assign(net.layers[j].biases.size(), 0.0);
  }
  g.input.assign(net.input_dim(), 0.0);
  return g;
}

void accumulate_gradients(Gradients& into, const Gradients& g, double scale) {
  if (into.weights.size() != g.weights.size())
    throw ShapeMismatchError("gradient accumulation across different depths");
  for (std::size_t j = 0; j < g.weights.size(); ++j) {
    if (into.weights[j].size() != g.weights[j].size() || into.biases[j].size() != g.biases[j].size())
      throw ShapeMismatchError("gradient accumulation across different layer shapes");
    for (std::size_t i = 0; i < g.weights[j].size(); ++i) into.weights[j][i] += scale * g.weights[j][i];
    for (std::size_t i = 0; i < g.biases[j].size(); ++i) into.biases[j][i] += scale * g.biases[j][i];
  }
  if (into.input.size() == g.input.size())
    for (std::size_t i = 0; i < g.input.size(); ++i) into.input[i] += scale * g.input[i];
}

double grad_check(const Network& net, const std::vector<double>& input, double h) {
  if (!(h > 0.0)) throw OutOfRangeError("perturbation h must be positive");

  ForwardTape tape;
  forward(net, input, &tape);
  const Gradients analytic = backward(net, tape, std::vector<double>(net.output_dim(), 1.0));

  Network probe = net;
  auto f = [&probe, &input]() {
    const std::vector<double> out = forward(probe, input);
    double s = 0.0;
    for (double v : out) s += v;
    return s;
  };
  auto relative_error = [](double a, double n) {
    const double denom = std::max({std::fabs(a), std::fabs(n), 1e-12});
    return std::fabs(a - n) / denom;
  };

  double worst = 0.0;
  for (std::size_t j = 0; j < net.layers.size(); ++j) {
    auto check_block = [&](std::vector<double>& params, const std::vector<double>& grads) {
      for (std::size_t i = 0; i < params.size(); ++i) {
        const double saved = params[i];
        params[i] = saved + h;
        const double plus = f();
        params[i] = saved - h;
        const double minus = f();
        params[i] = saved;
        worst = std::max(worst, relative_error(grads[i], (plus - minus) / (2.0 * h)));
      }
    };
    check_block(probe.layers[j].weights, analytic.weights[j]);
    check_block(probe.layers[j].biases, analytic.biases[j]);
  }
  return worst;
}

OptimizerState make_optimizer(const Network& net, double learning_rate, double l2) {
  OptimizerState opt;
  opt.learning_rate = learning_rate;
  opt.l2 = l2;
  opt.m_weights.resize(net.layers.size());
  opt.v_weights.resize(net.layers.size());
  opt.m_biases.resize(net.layers.size());
  opt.v_biases.resize(net.layers.size());
  for (std::size_t j = 0; j < net.layers.size(); ++j) {
    opt.m_weights[j].assign(net.layers[j].weights.size(), 0.0);
    opt.v_weights[j].assign(net.layers[j].weights.size(), 0.0);
    opt.m_biases[j].assign(net.layers[j].biases.size(), 0.0);
    opt.v_biases[j].assign(net.layers[j].biases.size(), 0.0);
  }
  return opt;
}

void optimizer_step(Network& net, const Gradients& grads, OptimizerState& opt) {
  if (grads.weights.size() != net.layers.size() || opt.m_weights.size() != net.layers.size())
    throw ShapeMismatchError("optimizer state or gradients do not match network");
  opt.step += 1;
  const double bc1 = 1.0 - std::pow(opt.beta1, static_cast<double>(opt.step));
  const double bc2 = 1.0 - std::pow(opt.beta2, static_cast<double>(opt.step));

  auto update = [&](std::vector<double>& params, const std::vector<double>& grad,
                    std::vector<double>& m, std::vector<double>& v, double l2) {
    if (params.size() != grad.size() || params.size() != m.size())
      throw ShapeMismatchError("parameter block shape mismatch in optimizer step");
    for (std::size_t i = 0; i < params.size(); ++i) {
      const double g = grad[i] + l2 * params[i];
      m[i] = opt.beta1 * m[i] + (1.0 - opt.beta1) * g;
      v[i] = opt.beta2 * v[i] + (1.0 - opt.beta2) * g * g;
      const double m_hat = m[i] / bc1;
      const double v_hat = v[i] / bc2;
      params[i] -= opt.learning_rate * m_hat / (std::sqrt(v_hat) + opt.epsilon);
    }
  };
  for (std::size_t j = 0; j < net.layers.size(); ++j) {
    update(net.layers[j].weights, grads.weights[j], opt.m_weights[j], opt.v_weights[j], opt.l2);
    update(net.layers[j].biases, grads.biases[j], opt.m_biases[j], opt.v_biases[j], 0.0);
  }
}

}  // namespace auctionrl
