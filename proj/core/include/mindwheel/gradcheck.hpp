#ifndef MINDWHEEL_GRADCHECK_HPP
#define MINDWHEEL_GRADCHECK_HPP

#include <functional>
#include <span>
#include <string>

#include "mindwheel/tensor.hpp"

namespace mindwheel::nn {

struct GradCheckReport {
    double max_rel_err = 0.0;
    std::string worst_param;
    std::size_t worst_index = 0;
    double analytic = 0.0;
    double numeric = 0.0;
};

// Compares analytic gradients against central finite differences.
//
//   loss_and_grads: zeroes the grads, runs forward+backward, returns loss
//   loss_only:      runs forward with the current parameter values
//
// For every parameter entry w the numeric gradient is
// (loss(w+step) - loss(w-step)) / (2 step); the relative error is
// |a - n| / max(|a|, |n|, 1e-8). Parameters are restored on return.
GradCheckReport grad_check(std::span<Parameter* const> params,
                           const std::function<double()>& loss_and_grads,
                           const std::function<double()>& loss_only,
                           double step = 1e-5);

}  // namespace mindwheel::nn

#endif
