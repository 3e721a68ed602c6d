#ifndef MINDWHEEL_LAYERS_HPP
#define MINDWHEEL_LAYERS_HPP

#include <cstdint>
#include <vector>

#include "mindwheel/kernels.hpp"
#include "mindwheel/rng.hpp"
#include "mindwheel/tensor.hpp"

namespace mindwheel::nn {

// ---------------------------------------------------------------------------
// LSTM
//
// Gate order within the leading 4U dimension is (i, f, g, o):
//   z_t = W x_t + R h_{t-1} + b
//   i = sigmoid(z_i), f = sigmoid(z_f), g = tanh(z_g), o = sigmoid(z_o)
//   c_t = f . c_{t-1} + i . g
//   h_t = o . tanh(c_t)
// with h_0 = c_0 = 0. Weights init uniform(-sqrt(1/fan_in), +sqrt(1/fan_in));
// biases zero except the forget block, which starts at +1.
// ---------------------------------------------------------------------------

struct LstmParams {
    LstmParams(const std::string& prefix, std::size_t units, std::size_t input_dim)
        : W(prefix + ".W", {4 * units, input_dim}),
          R(prefix + ".R", {4 * units, units}),
          b(prefix + ".b", {4 * units}) {}

    std::size_t units() const { return R.value.dim(1); }
    std::size_t input_dim() const { return W.value.dim(1); }

    void init(Rng& rng, double forget_bias = 1.0);
    std::vector<Parameter*> params() { return {&W, &R, &b}; }

    Parameter W;  // [4U x D]
    Parameter R;  // [4U x U]
    Parameter b;  // [4U]
};

struct LstmCache {
    Tensor x;      // [T x D] input copy
    Tensor h;      // [T x U]
    Tensor c;      // [T x U]
    Tensor gates;  // [T x 4U] post-activation (i, f, g, o)
};

// Full-sequence forward; returns h [T x U]. Pass cache to enable backward.
Tensor lstm_forward(const Tensor& x, const LstmParams& p, LstmCache* cache = nullptr);

// Accumulates dW/dR/db into p's grad buffers and returns dx [T x D].
Tensor lstm_backward(const Tensor& dh, LstmParams& p, const LstmCache& cache);

// ---------------------------------------------------------------------------
// Dropout (inverted): training keeps each unit with probability 1-rate and
// scales by 1/(1-rate); inference is the identity.
// ---------------------------------------------------------------------------

struct DropoutResult {
    Tensor y;
    Tensor mask;  // entries 0 or 1/(1-rate); all ones at inference
};

DropoutResult dropout(const Tensor& x, double rate, bool training, Rng& rng);
Tensor dropout_backward(const Tensor& dy, const Tensor& mask);

// ---------------------------------------------------------------------------
// LeakyReLU; gradient at exactly 0 is defined as `slope`.
// ---------------------------------------------------------------------------

Tensor leaky_relu(const Tensor& x, double slope);
Tensor leaky_relu_backward(const Tensor& dy, const Tensor& x, double slope);

// ---------------------------------------------------------------------------
// Additive attention pooling over a hidden sequence:
//   e_t = v . tanh(W h_t + b)        scores [T]
//   weights = softmax(e)             (max-subtraction stabilized)
//   context = sum_t weights_t h_t    [U]
// ---------------------------------------------------------------------------

struct AttentionParams {
    AttentionParams(const std::string& prefix, std::size_t width, std::size_t units)
        : W(prefix + ".W", {width, units}),
          b(prefix + ".b", {width}),
          v(prefix + ".v", {width}) {}

    std::size_t width() const { return W.value.dim(0); }
    std::size_t units() const { return W.value.dim(1); }

    void init(Rng& rng);
    std::vector<Parameter*> params() { return {&W, &b, &v}; }

    Parameter W;  // [A x U]
    Parameter b;  // [A]
    Parameter v;  // [A]
};

struct AttentionCache {
    Tensor h;        // [T x U] input copy
    Tensor u;        // [T x A] tanh(W h_t + b)
    Tensor weights;  // [T]
};

struct AttentionResult {
    Tensor context;  // [U]
    Tensor weights;  // [T]
};

AttentionResult attention_pool(const Tensor& h, const AttentionParams& p,
                               AttentionCache* cache = nullptr);

// Accumulates grads into p and returns dh [T x U].
Tensor attention_pool_backward(const Tensor& dcontext, AttentionParams& p,
                               const AttentionCache& cache);

// ---------------------------------------------------------------------------
// Dense layer with softmax output.
// ---------------------------------------------------------------------------

struct DenseParams {
    DenseParams(const std::string& prefix, std::size_t classes, std::size_t units)
        : W(prefix + ".W", {classes, units}), b(prefix + ".b", {classes}) {}

    std::size_t classes() const { return W.value.dim(0); }
    std::size_t units() const { return W.value.dim(1); }

    void init(Rng& rng);
    std::vector<Parameter*> params() { return {&W, &b}; }

    Parameter W;  // [K x U]
    Parameter b;  // [K]
};

struct DenseCache {
    Tensor input;   // [U]
    Tensor logits;  // [K]
};

// Returns probs [K]: stabilized softmax of W c + b.
Tensor dense_softmax(const Tensor& c, const DenseParams& p, DenseCache* cache = nullptr);

// Given dlogits, accumulates grads into p and returns dc [U].
Tensor dense_backward(const Tensor& dlogits, DenseParams& p, const DenseCache& cache);

// ---------------------------------------------------------------------------
// Categorical cross-entropy.
// ---------------------------------------------------------------------------

// -log(probs[true class]); onehot must contain exactly one 1 and zeros
// elsewhere (throws LabelError otherwise). For numerically safe training
// use cross_entropy_from_logits, which fuses log-softmax.
double categorical_cross_entropy(std::span<const double> probs,
                                 std::span<const double> onehot);

struct CrossEntropyResult {
    double loss;
    Tensor dlogits;  // softmax(logits) - onehot
};

// loss = log_sum_exp(logits) - logits[label], the fused stable form.
CrossEntropyResult cross_entropy_from_logits(const Tensor& logits, int label);

}  // namespace mindwheel::nn

#endif
