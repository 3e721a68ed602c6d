#include "mindwheel/gradcheck.hpp"

#include <cmath>
#include <vector>

namespace mindwheel::nn {

GradCheckReport grad_check(std::span<Parameter* const> params,
                           const std::function<double()>& loss_and_grads,
                           const std::function<double()>& loss_only,
                           double step) {
    loss_and_grads();

    // Snapshot analytic gradients; loss_only below must not disturb them.
    std::vector<std::vector<double>> analytic;
    analytic.reserve(params.size());
    for (const Parameter* p : params)
        analytic.emplace_back(p->grad.flat().begin(), p->grad.flat().end());

    GradCheckReport report;
    for (std::size_t pi = 0; pi < params.size(); ++pi) {
        Parameter* p = params[pi];
        for (std::size_t i = 0; i < p->value.numel(); ++i) {
            const double saved = p->value[i];
            p->value[i] = saved + step;
            const double up = loss_only();
            p->value[i] = saved - step;
            const double down = loss_only();
            p->value[i] = saved;

            const double numeric = (up - down) / (2.0 * step);
            const double a = analytic[pi][i];
            const double denom = std::max({std::fabs(a), std::fabs(numeric), 1e-8});
            const double rel = std::fabs(a - numeric) / denom;
            if (rel > report.max_rel_err) {
                report.max_rel_err = rel;
                report.worst_param = p->name;
                report.worst_index = i;
                report.analytic = a;
                report.numeric = numeric;
            }
        }
    }
    return report;
}

}  // namespace mindwheel::nn
