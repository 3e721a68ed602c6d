#ifndef MINDWHEEL_SYNTH_HPP
#define MINDWHEEL_SYNTH_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "mindwheel/dataset.hpp"

namespace mindwheel::synth {

// Class-conditional tone generator standing in for human EEG recordings.
// Each class is a pure tone at its own frequency plus Gaussian noise, so
// the classes are separable by construction and the classifier's
// acceptance targets are attainable at desk scale.
struct SynthConfig {
    std::array<double, 4> class_frequencies{6.0, 10.0, 15.0, 22.0};  // Hz
    double amplitude = 8000.0;   // ADC counts
    double noise_std = 1000.0;   // ADC counts
    double sample_rate = data::kSampleRateHz;
    std::uint64_t seed = 7;
};

void validate(const SynthConfig& cfg);  // throws RangeError

// Deterministic in (config, class_id, trial_index): the generator is
// Rng::keyed(seed, class_id, trial_index); draw order is phase, then one
// noise deviate per sample, then the attention level.
//   samples[n] = round(amplitude * sin(2*pi*f*n/rate + phase) + noise)
// clipped to the signed 16-bit range; attention uniform in 40..100,
// poor_signal = 0.
data::Trial generate_trial(const SynthConfig& cfg, int class_id, std::size_t trial_index);

// per_class trials for classes 0..num_classes-1, grouped by class,
// trial_index running 0..per_class-1 within each class.
std::vector<data::Trial> generate_dataset(const SynthConfig& cfg,
                                          std::size_t num_classes,
                                          std::size_t per_class);

}  // namespace mindwheel::synth

#endif
