#ifndef MINDWHEEL_DATASET_HPP
#define MINDWHEEL_DATASET_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "mindwheel/errors.hpp"
#include "mindwheel/tensor.hpp"

namespace mindwheel::data {

// One trial = 4 seconds at 512 Hz.
inline constexpr std::size_t kTrialSamples = 2048;
inline constexpr double kSampleRateHz = 512.0;

// Stimulus colors and their command labels.
enum class Color : int { red = 0, blue = 1, black = 2, yellow = 3 };

inline constexpr int kNumColors = 4;

const char* color_name(Color c);
Color color_from_label(int label);              // throws LabelError
Color color_from_name(const std::string& name);  // throws LabelError
inline int label_for(Color c) { return static_cast<int>(c); }

// One labeled 4-second recording.
struct Trial {
    std::vector<std::int16_t> samples;  // exactly kTrialSamples ADC counts
    int label = 0;                      // 0..3
    Color color = Color::red;           // must pair with label
    int attention_level = 0;            // 0..100
    int poor_signal = 0;                // 0..200, 0 = best
    std::string subject_id;
    std::string captured_at;

    void validate() const;  // throws DataError on any violated invariant
};

struct WindowShape {
    std::size_t rows = 0;
    std::size_t cols = 0;
    friend bool operator==(const WindowShape&, const WindowShape&) = default;
};

// Parses "256x8" style strings. Throws UsageError.
WindowShape parse_shape(const std::string& text);

// Row-major reshape of the sample sequence into a [rows x cols] float
// matrix: element (i, j) = samples[i*cols + j]. rows*cols must equal the
// sample count. Throws ShapeError.
nn::Tensor window_trial(std::span<const std::int16_t> samples, WindowShape shape);

struct FilterResult {
    std::vector<Trial> kept;
    std::size_t rejected = 0;
};

// Keeps trials with poor_signal <= max_poor_signal and max |sample| <=
// amplitude_limit. Order preserved.
FilterResult filter_quality(std::span<const Trial> trials, int max_poor_signal,
                            int amplitude_limit);

// Plain-text dataset store: a header line ("mindwheel-dataset v1") followed
// by one record per line with '|'-separated fields:
//   label|color|attention|poor_signal|subject|captured_at|s0,s1,...,s2047
void append_trial(const std::filesystem::path& store_path, const Trial& trial);
std::vector<Trial> load_dataset(const std::filesystem::path& store_path);

inline constexpr const char* kDatasetHeader = "mindwheel-dataset v1";

struct SplitSpec {
    std::size_t train_per_class = 80;
    std::size_t seen_per_class = 50;
    std::size_t unseen_per_class = 50;
    std::uint64_t seed = 7;
};

struct Split {
    std::vector<Trial> train;
    std::vector<Trial> seen_test;    // drawn from train
    std::vector<Trial> unseen_test;  // disjoint from train
};

// Deterministic per-class split. seen_test is a subset of train; unseen_test
// is disjoint from train. Throws CountError naming the class that falls
// short.
Split split_seen_unseen(std::span<const Trial> trials, const SplitSpec& spec);

}  // namespace mindwheel::data

#endif
