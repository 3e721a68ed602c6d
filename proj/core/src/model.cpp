#include "mindwheel/model.hpp"

#include <cstring>
#include <fstream>

namespace mindwheel::clf {

void validate_config(const ModelConfig& cfg) {
    if (cfg.time_steps == 0 || cfg.features == 0)
        throw ShapeError("time_steps and features must be positive");
    if (cfg.lstm1_units == 0 || cfg.lstm2_units == 0 || cfg.attention_width == 0)
        throw ShapeError("layer widths must be positive");
    if (cfg.num_classes < 2)
        throw RangeError("num_classes must be at least 2");
    if (cfg.dropout_rate < 0.0 || cfg.dropout_rate >= 1.0)
        throw RangeError("dropout_rate must lie in [0, 1)");
    if (cfg.input_scale <= 0.0)
        throw RangeError("input_scale must be positive");
}

Model::Model(const ModelConfig& cfg)
    : config_(cfg),
      lstm1_("lstm1", cfg.lstm1_units, cfg.features),
      lstm2_("lstm2", cfg.lstm2_units, cfg.lstm1_units),
      attention_("attention", cfg.attention_width, cfg.lstm2_units),
      output_("output", cfg.num_classes, cfg.lstm2_units) {
    validate_config(cfg);
    Rng rng(cfg.seed);
    lstm1_.init(rng);
    lstm2_.init(rng);
    attention_.init(rng);
    output_.init(rng);
}

std::vector<nn::Parameter*> Model::parameters() {
    std::vector<nn::Parameter*> out;
    for (auto* p : lstm1_.params()) out.push_back(p);
    for (auto* p : lstm2_.params()) out.push_back(p);
    for (auto* p : attention_.params()) out.push_back(p);
    for (auto* p : output_.params()) out.push_back(p);
    return out;
}

std::vector<const nn::Parameter*> Model::parameters() const {
    auto mutable_params = const_cast<Model*>(this)->parameters();
    return {mutable_params.begin(), mutable_params.end()};
}

std::size_t Model::parameter_count() const {
    std::size_t n = 0;
    for (const auto* p : parameters()) n += p->value.numel();
    return n;
}

std::size_t parameter_count(const ModelConfig& cfg) {
    const std::size_t d = cfg.features, u1 = cfg.lstm1_units, u2 = cfg.lstm2_units;
    const std::size_t a = cfg.attention_width, k = cfg.num_classes;
    return 4 * u1 * (d + u1 + 1) + 4 * u2 * (u1 + u2 + 1) + (a * u2 + a + a) +
           (k * u2 + k);
}

nn::Tensor Model::forward(const nn::Tensor& window, ForwardCache* cache,
                          bool training, Rng* dropout_rng) const {
    if (window.rank() != 2 || window.dim(0) != config_.time_steps ||
        window.dim(1) != config_.features)
        throw ShapeError("window must be [" + std::to_string(config_.time_steps) + " x " +
                         std::to_string(config_.features) + "]");
    if (training && dropout_rng == nullptr)
        throw NumericError("training forward requires a dropout rng");

    nn::Tensor x = window;
    for (std::size_t i = 0; i < x.numel(); ++i) x[i] *= config_.input_scale;

    nn::Tensor h1 = nn::lstm_forward(x, lstm1_, cache ? &cache->lstm1 : nullptr);

    nn::Tensor activated;
    if (training) {
        auto dropped = nn::dropout(h1, config_.dropout_rate, true, *dropout_rng);
        if (cache) {
            cache->dropout_mask = dropped.mask;
            cache->pre_activation = dropped.y;
        }
        activated = nn::leaky_relu(dropped.y, config_.leaky_slope);
    } else {
        if (cache) {
            cache->dropout_mask = nn::Tensor(h1.shape());
            cache->dropout_mask.fill(1.0);
            cache->pre_activation = h1;
        }
        activated = nn::leaky_relu(h1, config_.leaky_slope);
    }

    nn::Tensor h2 = nn::lstm_forward(activated, lstm2_, cache ? &cache->lstm2 : nullptr);
    auto pooled = nn::attention_pool(h2, attention_, cache ? &cache->attention : nullptr);
    nn::Tensor probs = nn::dense_softmax(pooled.context, output_, cache ? &cache->dense : nullptr);
    if (cache) cache->probs = probs;
    return probs;
}

double Model::backward(int label, const ForwardCache& cache) {
    auto ce = nn::cross_entropy_from_logits(cache.dense.logits, label);
    nn::Tensor dcontext = nn::dense_backward(ce.dlogits, output_, cache.dense);
    nn::Tensor dh2 = nn::attention_pool_backward(dcontext, attention_, cache.attention);
    nn::Tensor dact = nn::lstm_backward(dh2, lstm2_, cache.lstm2);
    nn::Tensor dpre = nn::leaky_relu_backward(dact, cache.pre_activation, config_.leaky_slope);
    nn::Tensor dh1 = nn::dropout_backward(dpre, cache.dropout_mask);
    nn::lstm_backward(dh1, lstm1_, cache.lstm1);
    return ce.loss;
}

Model::Prediction Model::predict(const nn::Tensor& window) const {
    ForwardCache cache;
    nn::Tensor probs = forward(window, &cache, false, nullptr);

    Prediction pred;
    pred.probs = probs;
    pred.attention_weights = cache.attention.weights;
    pred.class_id = 0;
    for (std::size_t k = 1; k < probs.numel(); ++k)
        if (probs[k] > probs[static_cast<std::size_t>(pred.class_id)])
            pred.class_id = static_cast<int>(k);
    return pred;
}

void Model::zero_grads() {
    for (auto* p : parameters()) p->zero_grad();
}

nn::GradCheckReport Model::grad_check(const nn::Tensor& window, int label, double step) {
    auto params = parameters();
    auto loss_and_grads = [&]() {
        zero_grads();
        ForwardCache cache;
        forward(window, &cache, false, nullptr);
        return backward(label, cache);
    };
    auto loss_only = [&]() {
        ForwardCache cache;
        forward(window, &cache, false, nullptr);
        return nn::cross_entropy_from_logits(cache.dense.logits, label).loss;
    };
    return nn::grad_check(params, loss_and_grads, loss_only, step);
}

Model build_model(const ModelConfig& cfg) {
    validate_config(cfg);
    if (cfg.time_steps * cfg.features != data::kTrialSamples)
        throw ShapeError("time_steps * features must equal " +
                         std::to_string(data::kTrialSamples));
    return Model(cfg);
}

// ---------------------------------------------------------------------------
// Checkpoint I/O
// ---------------------------------------------------------------------------

namespace {

constexpr char kMagic[4] = {'M', 'W', 'C', 'K'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& out, std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xFF);
    out.write(reinterpret_cast<const char*>(b), 4);
}

void put_u64(std::ostream& out, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xFF);
    out.write(reinterpret_cast<const char*>(b), 8);
}

void put_f64(std::ostream& out, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    put_u64(out, bits);
}

std::uint32_t get_u32(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    if (!in) throw DataError("checkpoint truncated");
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
    return v;
}

std::uint64_t get_u64(std::istream& in) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    if (!in) throw DataError("checkpoint truncated");
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
    return v;
}

double get_f64(std::istream& in) {
    const std::uint64_t bits = get_u64(in);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

}  // namespace

void save_checkpoint(const std::filesystem::path& path, const Model& model) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write checkpoint: " + path.string());

    out.write(kMagic, 4);
    put_u32(out, kVersion);

    const ModelConfig& cfg = model.config();
    put_u64(out, cfg.time_steps);
    put_u64(out, cfg.features);
    put_u64(out, cfg.lstm1_units);
    put_u64(out, cfg.lstm2_units);
    put_f64(out, cfg.dropout_rate);
    put_f64(out, cfg.leaky_slope);
    put_u64(out, cfg.attention_width);
    put_u64(out, cfg.num_classes);
    put_f64(out, cfg.input_scale);
    put_u64(out, cfg.seed);

    const auto params = model.parameters();
    put_u32(out, static_cast<std::uint32_t>(params.size()));
    for (const nn::Parameter* p : params) {
        put_u32(out, static_cast<std::uint32_t>(p->name.size()));
        out.write(p->name.data(), static_cast<std::streamsize>(p->name.size()));
        put_u32(out, static_cast<std::uint32_t>(p->value.shape().size()));
        for (std::size_t d : p->value.shape()) put_u64(out, d);
        for (double v : p->value.flat()) put_f64(out, v);
    }
    if (!out) throw DataError("checkpoint write failed: " + path.string());
}

Model load_checkpoint(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw NotFoundError("checkpoint " + path.string());

    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw DataError("not a mindwheel checkpoint: " + path.string());
    if (get_u32(in) != kVersion)
        throw DataError("unsupported checkpoint version");

    ModelConfig cfg;
    cfg.time_steps = get_u64(in);
    cfg.features = get_u64(in);
    cfg.lstm1_units = get_u64(in);
    cfg.lstm2_units = get_u64(in);
    cfg.dropout_rate = get_f64(in);
    cfg.leaky_slope = get_f64(in);
    cfg.attention_width = get_u64(in);
    cfg.num_classes = get_u64(in);
    cfg.input_scale = get_f64(in);
    cfg.seed = get_u64(in);

    Model model(cfg);
    auto params = model.parameters();
    const std::uint32_t count = get_u32(in);
    if (count != params.size())
        throw DataError("checkpoint parameter count mismatch");

    for (nn::Parameter* p : params) {
        const std::uint32_t name_len = get_u32(in);
        std::string name(name_len, '\0');
        in.read(name.data(), name_len);
        if (!in || name != p->name)
            throw DataError("checkpoint parameter order mismatch: expected " + p->name);

        const std::uint32_t ndim = get_u32(in);
        std::vector<std::size_t> shape(ndim);
        for (auto& d : shape) d = get_u64(in);
        if (shape != p->value.shape())
            throw ShapeError("checkpoint shape mismatch for " + p->name);

        for (double& v : p->value.flat()) v = get_f64(in);
    }
    return model;
}

}  // namespace mindwheel::clf
