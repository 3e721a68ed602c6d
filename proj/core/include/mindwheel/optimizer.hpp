#ifndef MINDWHEEL_OPTIMIZER_HPP
#define MINDWHEEL_OPTIMIZER_HPP

#include <cstdint>
#include <span>

#include "mindwheel/tensor.hpp"

namespace mindwheel::nn {

struct AdamConfig {
    double lr = 0.001;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

// One Adam update over every parameter, reading Parameter::grad:
//   m <- b1 m + (1-b1) g;  v <- b2 v + (1-b2) g^2
//   value -= lr * mhat / (sqrt(vhat) + eps)     (bias-corrected at step t)
// t starts at 1. Throws NumericError naming the parameter if any gradient
// entry is non-finite.
void adam_step(std::span<Parameter* const> params, std::uint64_t t, const AdamConfig& cfg);

}  // namespace mindwheel::nn

#endif
