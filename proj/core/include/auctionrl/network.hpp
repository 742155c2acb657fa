#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace auctionrl {

enum class Activation { kRelu, kTanh, kIdentity };

std::string activation_name(Activation a);
Activation activation_from_name(const std::string& name);  // throws BadArchitectureError

struct Layer {
  std::size_t in = 0;
  std::size_t out = 0;
  std::vector<double> weights;  // row-major, out rows of in columns
  std::vector<double> biases;   // out
  Activation activation = Activation::kIdentity;
};

struct Network {
  std::vector<Layer> layers;

  std::size_t input_dim() const { return layers.empty() ? 0 : layers.front().in; }
  std::size_t output_dim() const { return layers.empty() ? 0 : layers.back().out; }
  std::size_t parameter_count() const;
};

// Pre-activations and activations from one forward pass, consumed by backward.
struct ForwardTape {
  std::vector<double> input;
  std::vector<std::vector<double>> pre;   // z = W a_prev + b, per layer
  std::vector<std::vector<double>> post;  // activation(z), per layer
};

struct Gradients {
  std::vector<std::vector<double>> weights;  // congruent with Network layers
  std::vector<std::vector<double>> biases;
  std::vector<double> input;  // d<output_grad, output>/d input
};

// Glorot-uniform weights (bound sqrt(6/(fan_in+fan_out))), zero biases.
// activations.size() must equal dims.size() - 1.
Network init_network(const std::vector<std::size_t>& dims,
                     const std::vector<Activation>& activations, std::uint64_t seed);

std::vector<double> forward(const Network& net, const std::vector<double>& input,
                            ForwardTape* tape = nullptr);

// Exact reverse-mode gradients of <output_grad, output> with respect to every
// parameter and to the input.
Gradients backward(const Network& net, const ForwardTape& tape,
                   const std::vector<double>& output_grad);

// Input gradient alone, skipping the parameter-gradient work; used where a
// network only relays gradients (e.g. the critic inside the policy update).
std::vector<double> backward_input(const Network& net, const ForwardTape& tape,
                                   const std::vector<double>& output_grad);

Gradients zero_gradients(const Network& net);

// into += scale * g (input gradient included when both carry one).
void accumulate_gradients(Gradients& into, const Gradients& g, double scale = 1.0);

// Worst relative error between backward and central finite differences of
// f(params) = sum(output), over every weight and bias. Error metric:
// |analytic - numeric| / max(|analytic|, |numeric|, 1e-12).
double grad_check(const Network& net, const std::vector<double>& input, double h);

struct OptimizerState {
  double learning_rate = 1e-3;
  double l2 = 1e-4;  // applied to weights only
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::uint64_t step = 0;
  std::vector<std::vector<double>> m_weights, v_weights;
  std::vector<std::vector<double>> m_biases, v_biases;
};

OptimizerState make_optimizer(const Network& net, double learning_rate, double l2 = 1e-4);

// Adaptive-moment update with bias correction, in place.
void optimizer_step(Network& net, const Gradients& grads, OptimizerState& opt);

}  // namespace auctionrl
