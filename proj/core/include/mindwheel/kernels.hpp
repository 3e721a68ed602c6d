#ifndef MINDWHEEL_KERNELS_HPP
#define MINDWHEEL_KERNELS_HPP

#include <cstddef>
#include <span>

namespace mindwheel::nn {

// Low-level dense kernels. All reductions use a fixed 8-lane accumulator
// order so results are bit-identical from run to run; the lane structure
// also lets the compiler vectorize without -ffast-math.

// sum_i a[i] * b[i]
double dot(const double* a, const double* b, std::size_t n);

// y[i] += alpha * x[i]
void axpy(double* y, double alpha, const double* x, std::size_t n);

// y = M x   (M is rows x cols, row-major; y has length rows)
void matvec(double* y, const double* m, const double* x,
            std::size_t rows, std::size_t cols);

// y += M x
void matvec_add(double* y, const double* m, const double* x,
                std::size_t rows, std::size_t cols);

// y += M^T x  (M is rows x cols; x has length rows, y has length cols)
void matvec_t_add(double* y, const double* m, const double* x,
                  std::size_t rows, std::size_t cols);

// M += x y^T  (rank-1 update; M is rows x cols, x length rows, y length cols)
void outer_add(double* m, const double* x, const double* y,
               std::size_t rows, std::size_t cols);

// In-place stabilized softmax over x. Subtracts the max before
// exponentiation; output sums to 1 and every entry is strictly positive.
void softmax_inplace(double* x, std::size_t n);

inline void softmax_inplace(std::span<double> x) { softmax_inplace(x.data(), x.size()); }

// log(sum_i exp(x[i])) with max-subtraction stabilization.
double log_sum_exp(const double* x, std::size_t n);

double sigmoid(double x);

}  // namespace mindwheel::nn

#endif
