#ifndef MINDWHEEL_TENSOR_HPP
#define MINDWHEEL_TENSOR_HPP

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "mindwheel/errors.hpp"
#include "mindwheel/rng.hpp"

namespace mindwheel::nn {

// Dense row-major 64-bit float array. Small by design: just enough shape
// bookkeeping for the layers in this library, no views, no broadcasting.
class Tensor {
public:
    Tensor() = default;

    explicit Tensor(std::vector<std::size_t> shape)
        : shape_(std::move(shape)), data_(checked_numel(shape_), 0.0) {}

    Tensor(std::initializer_list<std::size_t> shape)
        : Tensor(std::vector<std::size_t>(shape)) {}

    Tensor(std::vector<std::size_t> shape, std::vector<double> data)
        : shape_(std::move(shape)), data_(std::move(data)) {
        if (checked_numel(shape_) != data_.size())
            throw ShapeError("tensor data length does not match shape");
    }

    const std::vector<std::size_t>& shape() const { return shape_; }
    std::size_t rank() const { return shape_.size(); }
    std::size_t dim(std::size_t i) const { return shape_.at(i); }
    std::size_t numel() const { return data_.size(); }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    std::span<double> flat() { return data_; }
    std::span<const double> flat() const { return data_; }

    double& operator[](std::size_t i) { return data_[i]; }
    double operator[](std::size_t i) const { return data_[i]; }

    // 2-D access; row-major.
    double& at(std::size_t r, std::size_t c) { return data_[r * shape_[1] + c]; }
    double at(std::size_t r, std::size_t c) const { return data_[r * shape_[1] + c]; }

    std::span<double> row(std::size_t r) {
        return {data_.data() + r * shape_[1], shape_[1]};
    }
    std::span<const double> row(std::size_t r) const {
        return {data_.data() + r * shape_[1], shape_[1]};
    }

    void fill(double v) { std::fill(data_.begin(), data_.end(), v); }
    void zero() { fill(0.0); }

    bool same_shape(const Tensor& other) const { return shape_ == other.shape_; }

    // Uniform(-bound, +bound) fill, used for weight init.
    void fill_uniform(Rng& rng, double bound) {
        for (double& v : data_) v = rng.uniform(-bound, bound);
    }

private:
    static std::size_t checked_numel(const std::vector<std::size_t>& shape) {
        std::size_t n = 1;
        for (std::size_t d : shape) {
            if (d == 0) throw ShapeError("tensor dimension must be positive");
            n *= d;
        }
        return shape.empty() ? 0 : n;
    }

    std::vector<std::size_t> shape_;
    std::vector<double> data_;
};

// Trainable tensor: value plus gradient and Adam moment buffers, all of
// identical shape. Moments start at zero.
struct Parameter {
    Parameter() = default;
    Parameter(std::string name, std::vector<std::size_t> shape)
        : name(std::move(name)), value(shape), grad(shape), m(shape), v(shape) {}

    std::string name;
    Tensor value;
    Tensor grad;
    Tensor m;
    Tensor v;

    void zero_grad() { grad.zero(); }
};

}  // namespace mindwheel::nn

#endif
