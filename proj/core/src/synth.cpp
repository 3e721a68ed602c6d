#include "mindwheel/synth.hpp"

#include <cmath>

#include "mindwheel/rng.hpp"

namespace mindwheel::synth {

void validate(const SynthConfig& cfg) {
    if (cfg.amplitude <= 0.0) throw RangeError("synth amplitude must be positive");
    if (cfg.noise_std < 0.0) throw RangeError("synth noise_std must be non-negative");
    if (cfg.sample_rate <= 0.0) throw RangeError("synth sample_rate must be positive");
    for (std::size_t i = 0; i < cfg.class_frequencies.size(); ++i) {
        const double f = cfg.class_frequencies[i];
        if (f <= 0.0 || f >= cfg.sample_rate / 2.0)
            throw RangeError("class frequency must lie in (0, rate/2)");
        for (std::size_t j = i + 1; j < cfg.class_frequencies.size(); ++j)
            if (f == cfg.class_frequencies[j])
                throw RangeError("class frequencies must be distinct");
    }
}

data::Trial generate_trial(const SynthConfig& cfg, int class_id, std::size_t trial_index) {
    validate(cfg);
    if (class_id < 0 || class_id >= data::kNumColors)
        throw LabelError("synth class " + std::to_string(class_id) + " out of range 0..3");

    Rng rng = Rng::keyed(cfg.seed, static_cast<std::uint64_t>(class_id), trial_index);
    const double phase = rng.uniform(0.0, 2.0 * M_PI);
    const double omega = 2.0 * M_PI * cfg.class_frequencies[static_cast<std::size_t>(class_id)] /
                         cfg.sample_rate;

    data::Trial trial;
    trial.samples.resize(data::kTrialSamples);
    for (std::size_t n = 0; n < data::kTrialSamples; ++n) {
        const double clean = cfg.amplitude * std::sin(omega * static_cast<double>(n) + phase);
        const double noisy = clean + cfg.noise_std * rng.normal();
        double v = std::round(noisy);
        if (v < -32768.0) v = -32768.0;
        if (v > 32767.0) v = 32767.0;
        trial.samples[n] = static_cast<std::int16_t>(v);
    }
    trial.label = class_id;
    trial.color = data::color_from_label(class_id);
    trial.attention_level = 40 + static_cast<int>(rng.uniform_int(61));  // 40..100
    trial.poor_signal = 0;
    trial.subject_id = "synth";
    trial.captured_at = std::to_string(trial_index * 4) + "s";
    return trial;
}

std::vector<data::Trial> generate_dataset(const SynthConfig& cfg,
                                          std::size_t num_classes,
                                          std::size_t per_class) {
    if (num_classes < 1 || num_classes > static_cast<std::size_t>(data::kNumColors))
        throw RangeError("num_classes must be 1..4");
    std::vector<data::Trial> trials;
    trials.reserve(num_classes * per_class);
    for (std::size_t c = 0; c < num_classes; ++c)
        for (std::size_t i = 0; i < per_class; ++i)
            trials.push_back(generate_trial(cfg, static_cast<int>(c), i));
    return trials;
}

}  // namespace mindwheel::synth
