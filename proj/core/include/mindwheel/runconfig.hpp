#ifndef MINDWHEEL_RUNCONFIG_HPP
#define MINDWHEEL_RUNCONFIG_HPP

#include <filesystem>
#include <string>

#include "mindwheel/dataset.hpp"
#include "mindwheel/drive.hpp"
#include "mindwheel/synth.hpp"
#include "mindwheel/train.hpp"

namespace mindwheel::pipeline {

// Every tunable in one place, loadable from a flat `key = value` config
// file; command-line flags override file values. Documented keys:
//
//   shape               ROWSxCOLS window, e.g. 256x8 (rows*cols = 2048)
//   classes             number of classes (2..4)
//   lstm1_units, lstm2_units, attention_width
//   dropout_rate, leaky_slope, input_scale
//   lr, beta1, beta2, epsilon, batch_size, max_epochs, val_fraction
//   scan_all_epochs     0/1
//   frequencies         comma list of 4 tone frequencies in Hz
//   amplitude, noise_std
//   per_class           synth trials per class
//   train_per_class, seen_per_class, unseen_per_class
//   max_poor_signal, amplitude_limit
//   threshold           attention gate threshold (0..100)
//   wheel_speed, track_width, hold
//   seed                sets every seed below at once
//   model_seed, train_seed, synth_seed, split_seed
struct RunConfig {
    clf::ModelConfig model;
    clf::TrainConfig train;
    synth::SynthConfig synth;
    data::SplitSpec split;
    drive::ChassisConfig chassis;
    std::size_t per_class = 130;
    int max_poor_signal = 50;
    int amplitude_limit = 32767;
    int attention_threshold = 50;
    double hold_seconds = 1.0;
};

// Applies one key/value pair. Throws UsageError on unknown keys or
// unparsable values.
void apply_key(RunConfig& cfg, const std::string& key, const std::string& value);

// Parses a flat key=value file ('#' starts a comment).
RunConfig load_run_config(const std::filesystem::path& path);

// Cross-field validation (delegates to each module's validator).
void validate(const RunConfig& cfg);

}  // namespace mindwheel::pipeline

#endif
