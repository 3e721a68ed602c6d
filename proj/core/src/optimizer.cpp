#include "mindwheel/optimizer.hpp"

#include <cmath>

#include "mindwheel/errors.hpp"

namespace mindwheel::nn {

void adam_step(std::span<Parameter* const> params, std::uint64_t t, const AdamConfig& cfg) {
    if (t == 0) throw NumericError("adam step index starts at 1");

    const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(t));
    const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(t));

    for (Parameter* p : params) {
        const std::size_t n = p->value.numel();
        double* w = p->value.data();
        double* m = p->m.data();
        double* v = p->v.data();
        const double* g = p->grad.data();

        for (std::size_t i = 0; i < n; ++i) {
            if (!std::isfinite(g[i]))
                throw NumericError("non-finite gradient in parameter " + p->name);
            m[i] = cfg.beta1 * m[i] + (1.0 - cfg.beta1) * g[i];
            v[i] = cfg.beta2 * v[i] + (1.0 - cfg.beta2) * g[i] * g[i];
            const double mhat = m[i] / bc1;
            const double vhat = v[i] / bc2;
            w[i] -= cfg.lr * mhat / (std::sqrt(vhat) + cfg.eps);
        }
    }
}

}  // namespace mindwheel::nn
