#include "mindwheel/layers.hpp"

#include <cmath>
#include <string>

namespace mindwheel::nn {

namespace {

double init_bound(std::size_t fan_in) { return std::sqrt(1.0 / static_cast<double>(fan_in)); }

}  // namespace

void LstmParams::init(Rng& rng, double forget_bias) {
    const std::size_t u = units();
    W.value.fill_uniform(rng, init_bound(input_dim()));
    R.value.fill_uniform(rng, init_bound(u));
    b.value.zero();
    for (std::size_t j = 0; j < u; ++j) b.value[u + j] = forget_bias;  // f block
    W.grad.zero(); R.grad.zero(); b.grad.zero();
}

Tensor lstm_forward(const Tensor& x, const LstmParams& p, LstmCache* cache) {
    if (x.rank() != 2 || x.dim(1) != p.input_dim())
        throw ShapeError("lstm input must be [T x " + std::to_string(p.input_dim()) + "]");
    const std::size_t T = x.dim(0);
    const std::size_t D = p.input_dim();
    const std::size_t U = p.units();

    Tensor h({T, U});
    Tensor c({T, U});
    Tensor gates({T, 4 * U});
    std::vector<double> z(4 * U);
    std::vector<double> h_prev(U, 0.0), c_prev(U, 0.0);

    const double* Wd = p.W.value.data();
    const double* Rd = p.R.value.data();
    const double* bd = p.b.value.data();

    for (std::size_t t = 0; t < T; ++t) {
        std::copy(bd, bd + 4 * U, z.data());
        matvec_add(z.data(), Wd, x.data() + t * D, 4 * U, D);
        matvec_add(z.data(), Rd, h_prev.data(), 4 * U, U);

        double* g = gates.data() + t * 4 * U;
        double* ht = h.data() + t * U;
        double* ct = c.data() + t * U;
        for (std::size_t j = 0; j < U; ++j) {
            const double gi = sigmoid(z[j]);
            const double gf = sigmoid(z[U + j]);
            const double gg = std::tanh(z[2 * U + j]);
            const double go = sigmoid(z[3 * U + j]);
            g[j] = gi;
            g[U + j] = gf;
            g[2 * U + j] = gg;
            g[3 * U + j] = go;
            ct[j] = gf * c_prev[j] + gi * gg;
            ht[j] = go * std::tanh(ct[j]);
        }
        std::copy(ht, ht + U, h_prev.data());
        std::copy(ct, ct + U, c_prev.data());
    }

    if (cache) {
        cache->x = x;
        cache->h = h;
        cache->c = std::move(c);
        cache->gates = std::move(gates);
    }
    return h;
}

Tensor lstm_backward(const Tensor& dh_in, LstmParams& p, const LstmCache& cache) {
    const std::size_t T = cache.x.dim(0);
    const std::size_t D = p.input_dim();
    const std::size_t U = p.units();
    if (dh_in.rank() != 2 || dh_in.dim(0) != T || dh_in.dim(1) != U)
        throw ShapeError("lstm upstream gradient shape mismatch");
    if (cache.gates.numel() != T * 4 * U)
        throw ShapeError("lstm cache does not match parameters");

    Tensor dx({T, D});
    std::vector<double> dh(U), dc(U, 0.0), dz(4 * U);

    double* dW = p.W.grad.data();
    double* dR = p.R.grad.data();
    double* db = p.b.grad.data();
    const double* Wd = p.W.value.data();
    const double* Rd = p.R.value.data();

    // dh carries the gradient flowing into h_t from above plus the
    // recurrent path from t+1; dc likewise for the cell.
    std::fill(dh.begin(), dh.end(), 0.0);

    for (std::size_t t = T; t-- > 0;) {
        const double* g = cache.gates.data() + t * 4 * U;
        const double* ct = cache.c.data() + t * U;
        const double* c_prev = t > 0 ? cache.c.data() + (t - 1) * U : nullptr;
        const double* h_prev = t > 0 ? cache.h.data() + (t - 1) * U : nullptr;

        for (std::size_t j = 0; j < U; ++j) {
            const double gi = g[j], gf = g[U + j], gg = g[2 * U + j], go = g[3 * U + j];
            const double tc = std::tanh(ct[j]);
            const double dht = dh[j] + dh_in[t * U + j];
            const double dct = dc[j] + dht * go * (1.0 - tc * tc);
            const double cp = c_prev ? c_prev[j] : 0.0;

            dz[j] = dct * gg * gi * (1.0 - gi);                 // d z_i
            dz[U + j] = dct * cp * gf * (1.0 - gf);             // d z_f
            dz[2 * U + j] = dct * gi * (1.0 - gg * gg);         // d z_g
            dz[3 * U + j] = dht * tc * go * (1.0 - go);         // d z_o
            dc[j] = dct * gf;                                   // into t-1
        }

        axpy(db, 1.0, dz.data(), 4 * U);
        outer_add(dW, dz.data(), cache.x.data() + t * D, 4 * U, D);
        if (h_prev) outer_add(dR, dz.data(), h_prev, 4 * U, U);

        matvec_t_add(dx.data() + t * D, Wd, dz.data(), 4 * U, D);
        std::fill(dh.begin(), dh.end(), 0.0);
        if (t > 0) matvec_t_add(dh.data(), Rd, dz.data(), 4 * U, U);
    }
    return dx;
}

DropoutResult dropout(const Tensor& x, double rate, bool training, Rng& rng) {
    if (rate < 0.0 || rate >= 1.0)
        throw RangeError("dropout rate must lie in [0, 1)");

    DropoutResult out;
    out.y = x;
    out.mask = Tensor(x.shape());
    if (!training || rate == 0.0) {
        out.mask.fill(1.0);
        return out;
    }
    const double keep_scale = 1.0 / (1.0 - rate);
    for (std::size_t i = 0; i < x.numel(); ++i) {
        const double m = rng.bernoulli(1.0 - rate) ? keep_scale : 0.0;
        out.mask[i] = m;
        out.y[i] = x[i] * m;
    }
    return out;
}

Tensor dropout_backward(const Tensor& dy, const Tensor& mask) {
    if (!dy.same_shape(mask)) throw ShapeError("dropout mask shape mismatch");
    Tensor dx = dy;
    for (std::size_t i = 0; i < dx.numel(); ++i) dx[i] *= mask[i];
    return dx;
}

Tensor leaky_relu(const Tensor& x, double slope) {
    Tensor y = x;
    for (std::size_t i = 0; i < y.numel(); ++i)
        if (y[i] <= 0.0) y[i] *= slope;
    return y;
}

Tensor leaky_relu_backward(const Tensor& dy, const Tensor& x, double slope) {
    if (!dy.same_shape(x)) throw ShapeError("leaky_relu shape mismatch");
    Tensor dx = dy;
    for (std::size_t i = 0; i < dx.numel(); ++i)
        if (x[i] <= 0.0) dx[i] *= slope;
    return dx;
}

void AttentionParams::init(Rng& rng) {
    W.value.fill_uniform(rng, init_bound(units()));
    b.value.zero();
    v.value.fill_uniform(rng, init_bound(width()));
    W.grad.zero(); b.grad.zero(); v.grad.zero();
}

AttentionResult attention_pool(const Tensor& h, const AttentionParams& p,
                               AttentionCache* cache) {
    if (h.rank() != 2 || h.dim(1) != p.units())
        throw ShapeError("attention input must be [T x " + std::to_string(p.units()) + "]");
    const std::size_t T = h.dim(0);
    if (T == 0) throw ShapeError("attention needs at least one time step");
    const std::size_t U = p.units();
    const std::size_t A = p.width();

    Tensor u({T, A});
    Tensor scores({T});
    for (std::size_t t = 0; t < T; ++t) {
        double* ut = u.data() + t * A;
        std::copy(p.b.value.data(), p.b.value.data() + A, ut);
        matvec_add(ut, p.W.value.data(), h.data() + t * U, A, U);
        for (std::size_t a = 0; a < A; ++a) ut[a] = std::tanh(ut[a]);
        scores[t] = dot(p.v.value.data(), ut, A);
    }
    softmax_inplace(scores.flat());

    AttentionResult out;
    out.context = Tensor({U});
    for (std::size_t t = 0; t < T; ++t)
        axpy(out.context.data(), scores[t], h.data() + t * U, U);
    out.weights = scores;

    if (cache) {
        cache->h = h;
        cache->u = std::move(u);
        cache->weights = out.weights;
    }
    return out;
}

Tensor attention_pool_backward(const Tensor& dcontext, AttentionParams& p,
                               const AttentionCache& cache) {
    const std::size_t T = cache.h.dim(0);
    const std::size_t U = p.units();
    const std::size_t A = p.width();
    if (dcontext.numel() != U) throw ShapeError("attention upstream gradient mismatch");

    Tensor dh({T, U});
    std::vector<double> dw(T);  // d loss / d weights
    for (std::size_t t = 0; t < T; ++t) {
        dw[t] = dot(dcontext.data(), cache.h.data() + t * U, U);
        axpy(dh.data() + t * U, cache.weights[t], dcontext.data(), U);
    }

    // Softmax backward: de_t = w_t * (dw_t - sum_s w_s dw_s).
    double mix = 0.0;
    for (std::size_t t = 0; t < T; ++t) mix += cache.weights[t] * dw[t];

    std::vector<double> dpre(A);
    for (std::size_t t = 0; t < T; ++t) {
        const double de = cache.weights[t] * (dw[t] - mix);
        const double* ut = cache.u.data() + t * A;
        axpy(p.v.grad.data(), de, ut, A);
        for (std::size_t a = 0; a < A; ++a)
            dpre[a] = de * p.v.value[a] * (1.0 - ut[a] * ut[a]);
        axpy(p.b.grad.data(), 1.0, dpre.data(), A);
        outer_add(p.W.grad.data(), dpre.data(), cache.h.data() + t * U, A, U);
        matvec_t_add(dh.data() + t * U, p.W.value.data(), dpre.data(), A, U);
    }
    return dh;
}

void DenseParams::init(Rng& rng) {
    W.value.fill_uniform(rng, init_bound(units()));
    b.value.zero();
    W.grad.zero(); b.grad.zero();
}

Tensor dense_softmax(const Tensor& c, const DenseParams& p, DenseCache* cache) {
    if (c.numel() != p.units())
        throw ShapeError("dense input must have " + std::to_string(p.units()) + " values");
    const std::size_t K = p.classes();

    Tensor logits({K});
    std::copy(p.b.value.data(), p.b.value.data() + K, logits.data());
    matvec_add(logits.data(), p.W.value.data(), c.data(), K, p.units());

    Tensor probs = logits;
    softmax_inplace(probs.flat());

    if (cache) {
        cache->input = c;
        cache->logits = std::move(logits);
    }
    return probs;
}

Tensor dense_backward(const Tensor& dlogits, DenseParams& p, const DenseCache& cache) {
    const std::size_t K = p.classes();
    const std::size_t U = p.units();
    if (dlogits.numel() != K) throw ShapeError("dense upstream gradient mismatch");

    axpy(p.b.grad.data(), 1.0, dlogits.data(), K);
    outer_add(p.W.grad.data(), dlogits.data(), cache.input.data(), K, U);

    Tensor dc({U});
    matvec_t_add(dc.data(), p.W.value.data(), dlogits.data(), K, U);
    return dc;
}

double categorical_cross_entropy(std::span<const double> probs,
                                 std::span<const double> onehot) {
    if (probs.size() != onehot.size())
        throw ShapeError("probs/onehot length mismatch");
    std::size_t hot = probs.size();
    for (std::size_t k = 0; k < onehot.size(); ++k) {
        if (onehot[k] == 1.0) {
            if (hot != probs.size()) throw LabelError("onehot has multiple ones");
            hot = k;
        } else if (onehot[k] != 0.0) {
            throw LabelError("onehot entries must be 0 or 1");
        }
    }
    if (hot == probs.size()) throw LabelError("onehot has no one");
    return -std::log(probs[hot]);
}

CrossEntropyResult cross_entropy_from_logits(const Tensor& logits, int label) {
    const std::size_t K = logits.numel();
    if (label < 0 || static_cast<std::size_t>(label) >= K)
        throw LabelError("class label out of range");

    CrossEntropyResult out;
    out.loss = log_sum_exp(logits.data(), K) - logits[static_cast<std::size_t>(label)];
    out.dlogits = logits;
    softmax_inplace(out.dlogits.flat());
    out.dlogits[static_cast<std::size_t>(label)] -= 1.0;
    return out;
}

}  // namespace mindwheel::nn
