#ifndef MINDWHEEL_MODEL_HPP
#define MINDWHEEL_MODEL_HPP

#include <cstdint>
#include <filesystem>
#include <vector>

#include "mindwheel/dataset.hpp"
#include "mindwheel/gradcheck.hpp"
#include "mindwheel/layers.hpp"

namespace mindwheel::clf {

// Classifier stack:
//   input [T x D] (scaled by input_scale)
//     -> LSTM(lstm1_units), full sequence out
//     -> dropout -> LeakyReLU
//     -> LSTM(lstm2_units), full sequence out
//     -> additive attention pooling
//     -> dense softmax over num_classes
struct ModelConfig {
    std::size_t time_steps = 256;
    std::size_t features = 8;
    std::size_t lstm1_units = 256;
    std::size_t lstm2_units = 64;
    double dropout_rate = 0.2;
    double leaky_slope = 0.01;
    std::size_t attention_width = 64;
    std::size_t num_classes = 4;
    // Raw ADC counts are large; inputs are multiplied by this before the
    // first LSTM. 1/32768 maps the full int16 range onto [-1, 1].
    double input_scale = 1.0 / 32768.0;
    std::uint64_t seed = 7;

    friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

// Structural invariants (positive sizes, K >= 2, dropout < 1...).
// Does not require T*D == 2048; build_model adds that check.
void validate_config(const ModelConfig& cfg);

class Model {
public:
    // Constructs and initializes parameters from cfg.seed. Accepts any
    // (time_steps, features); use build_model for the trial-sized contract.
    explicit Model(const ModelConfig& cfg);

    const ModelConfig& config() const { return config_; }

    std::vector<nn::Parameter*> parameters();
    std::vector<const nn::Parameter*> parameters() const;
    std::size_t parameter_count() const;

    struct ForwardCache {
        nn::LstmCache lstm1;
        nn::Tensor dropout_mask;
        nn::Tensor pre_activation;  // dropout output, input to LeakyReLU
        nn::LstmCache lstm2;
        nn::AttentionCache attention;
        nn::DenseCache dense;
        nn::Tensor probs;
    };

    // Forward pass. window is [T x D] of raw sample values. In training
    // mode dropout draws from dropout_rng (required); in inference mode the
    // pass is deterministic. Returns probs [K].
    nn::Tensor forward(const nn::Tensor& window, ForwardCache* cache,
                       bool training = false, Rng* dropout_rng = nullptr) const;

    // Cross-entropy loss + full backward pass; accumulates into parameter
    // grads (callers zero them between batches). Returns the loss.
    double backward(int label, const ForwardCache& cache);

    struct Prediction {
        int class_id = 0;                // argmax, ties to the lowest index
        nn::Tensor probs;                // [K]
        nn::Tensor attention_weights;    // [T]
    };

    Prediction predict(const nn::Tensor& window) const;

    void zero_grads();

    // Analytic-vs-finite-difference check of every parameter gradient on
    // one (window, label) example, dropout disabled.
    nn::GradCheckReport grad_check(const nn::Tensor& window, int label,
                                   double step = 1e-5);

private:
    ModelConfig config_;
    nn::LstmParams lstm1_;
    nn::LstmParams lstm2_;
    nn::AttentionParams attention_;
    nn::DenseParams output_;
};

// Validates the config including time_steps * features == kTrialSamples.
Model build_model(const ModelConfig& cfg);

// Closed-form parameter count for a config.
std::size_t parameter_count(const ModelConfig& cfg);

// ---------------------------------------------------------------------------
// Checkpoint file: "MWCK" magic, u32 version, config block, then each
// parameter as (name, shape, f64 data), all little-endian. Loading
// validates every shape against the stored config.
// ---------------------------------------------------------------------------

void save_checkpoint(const std::filesystem::path& path, const Model& model);
Model load_checkpoint(const std::filesystem::path& path);

}  // namespace mindwheel::clf

#endif
