#include "mindwheel/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>

#include "mindwheel/rng.hpp"

namespace mindwheel::data {

const char* color_name(Color c) {
    switch (c) {
        case Color::red: return "red";
        case Color::blue: return "blue";
        case Color::black: return "black";
        case Color::yellow: return "yellow";
    }
    throw LabelError("invalid color value");
}

Color color_from_label(int label) {
    if (label < 0 || label >= kNumColors)
        throw LabelError("label " + std::to_string(label) + " out of range 0..3");
    return static_cast<Color>(label);
}

Color color_from_name(const std::string& name) {
    for (int i = 0; i < kNumColors; ++i) {
        const auto c = static_cast<Color>(i);
        if (name == color_name(c)) return c;
    }
    throw LabelError("unknown color '" + name + "'");
}

void Trial::validate() const {
    if (samples.size() != kTrialSamples)
        throw DataError("trial must hold " + std::to_string(kTrialSamples) +
                        " samples, got " + std::to_string(samples.size()));
    if (label < 0 || label >= kNumColors)
        throw LabelError("trial label " + std::to_string(label) + " out of range");
    if (color != static_cast<Color>(label))
        throw DataError(std::string("label/color mismatch: label ") +
                        std::to_string(label) + " vs color " + color_name(color));
    if (attention_level < 0 || attention_level > 100)
        throw RangeError("attention level out of 0..100");
    if (poor_signal < 0 || poor_signal > 200)
        throw RangeError("poor signal out of 0..200");
    for (const char* field : {subject_id.c_str(), captured_at.c_str()}) {
        for (const char* p = field; *p; ++p)
            if (*p == '|' || *p == '\n' || *p == '\r')
                throw DataError("subject/captured_at may not contain '|' or newlines");
    }
}

WindowShape parse_shape(const std::string& text) {
    const auto x = text.find('x');
    if (x == std::string::npos || x == 0 || x + 1 >= text.size())
        throw UsageError("shape must look like 256x8, got '" + text + "'");
    std::size_t rows = 0, cols = 0;
    auto r1 = std::from_chars(text.data(), text.data() + x, rows);
    auto r2 = std::from_chars(text.data() + x + 1, text.data() + text.size(), cols);
    if (r1.ec != std::errc{} || r1.ptr != text.data() + x ||
        r2.ec != std::errc{} || r2.ptr != text.data() + text.size() ||
        rows == 0 || cols == 0)
        throw UsageError("shape must look like 256x8, got '" + text + "'");
    return {rows, cols};
}

nn::Tensor window_trial(std::span<const std::int16_t> samples, WindowShape shape) {
    if (shape.rows == 0 || shape.cols == 0 || shape.rows * shape.cols != samples.size())
        throw ShapeError("window shape " + std::to_string(shape.rows) + "x" +
                         std::to_string(shape.cols) + " does not cover " +
                         std::to_string(samples.size()) + " samples");
    nn::Tensor out({shape.rows, shape.cols});
    double* dst = out.data();
    for (std::size_t i = 0; i < samples.size(); ++i)
        dst[i] = static_cast<double>(samples[i]);
    return out;
}

FilterResult filter_quality(std::span<const Trial> trials, int max_poor_signal,
                            int amplitude_limit) {
    FilterResult result;
    result.kept.reserve(trials.size());
    for (const Trial& t : trials) {
        bool ok = t.poor_signal <= max_poor_signal;
        if (ok) {
            for (std::int16_t s : t.samples) {
                const int mag = s < 0 ? -static_cast<int>(s) : static_cast<int>(s);
                if (mag > amplitude_limit) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok)
            result.kept.push_back(t);
        else
            ++result.rejected;
    }
    return result;
}

void append_trial(const std::filesystem::path& store_path, const Trial& trial) {
    trial.validate();

    bool need_header = true;
    if (std::filesystem::exists(store_path)) {
        std::ifstream in(store_path);
        std::string first;
        if (std::getline(in, first) && !first.empty()) {
            if (first != kDatasetHeader)
                throw DataError("not a mindwheel dataset: " + store_path.string());
            need_header = false;
        }
    }

    std::ofstream out(store_path, std::ios::app);
    if (!out) throw DataError("cannot open for append: " + store_path.string());
    if (need_header) out << kDatasetHeader << '\n';

    out << trial.label << '|' << color_name(trial.color) << '|'
        << trial.attention_level << '|' << trial.poor_signal << '|'
        << trial.subject_id << '|' << trial.captured_at << '|';
    for (std::size_t i = 0; i < trial.samples.size(); ++i) {
        if (i) out << ',';
        out << trial.samples[i];
    }
    out << '\n';
    if (!out) throw DataError("write failed: " + store_path.string());
}

namespace {

long parse_int_field(const std::string& text, long record, const char* what) {
    long value = 0;
    auto r = std::from_chars(text.data(), text.data() + text.size(), value);
    if (r.ec != std::errc{} || r.ptr != text.data() + text.size())
        throw RecordError(std::string("bad ") + what + " '" + text + "'", record);
    return value;
}

}  // namespace

std::vector<Trial> load_dataset(const std::filesystem::path& store_path) {
    std::ifstream in(store_path);
    if (!in) throw NotFoundError("dataset file " + store_path.string());

    std::string line;
    if (!std::getline(in, line) || line != kDatasetHeader)
        throw DataError("missing dataset header in " + store_path.string());

    std::vector<Trial> trials;
    long record = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;

        std::vector<std::string> fields;
        std::size_t start = 0;
        while (fields.size() < 6) {
            const auto bar = line.find('|', start);
            if (bar == std::string::npos)
                throw RecordError("expected 7 '|'-separated fields", record);
            fields.push_back(line.substr(start, bar - start));
            start = bar + 1;
        }
        const std::string sample_text = line.substr(start);

        Trial t;
        t.label = static_cast<int>(parse_int_field(fields[0], record, "label"));
        try {
            t.color = color_from_name(fields[1]);
        } catch (const LabelError&) {
            throw RecordError("unknown color '" + fields[1] + "'", record);
        }
        t.attention_level = static_cast<int>(parse_int_field(fields[2], record, "attention"));
        t.poor_signal = static_cast<int>(parse_int_field(fields[3], record, "poor_signal"));
        t.subject_id = fields[4];
        t.captured_at = fields[5];

        t.samples.reserve(kTrialSamples);
        std::size_t pos = 0;
        while (pos <= sample_text.size() && !sample_text.empty()) {
            auto comma = sample_text.find(',', pos);
            if (comma == std::string::npos) comma = sample_text.size();
            const long v = parse_int_field(sample_text.substr(pos, comma - pos), record, "sample");
            if (v < -32768 || v > 32767)
                throw RecordError("sample " + std::to_string(v) + " outside int16", record);
            t.samples.push_back(static_cast<std::int16_t>(v));
            if (comma == sample_text.size()) break;
            pos = comma + 1;
        }

        try {
            t.validate();
        } catch (const Error& e) {
            throw RecordError(e.what(), record);
        }
        trials.push_back(std::move(t));
        ++record;
    }
    return trials;
}

Split split_seen_unseen(std::span<const Trial> trials, const SplitSpec& spec) {
    if (spec.seen_per_class > spec.train_per_class)
        throw CountError("seen_per_class exceeds train_per_class");

    std::map<int, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < trials.size(); ++i)
        by_class[trials[i].label].push_back(i);

    Rng rng(spec.seed);
    Split split;
    for (auto& [label, indices] : by_class) {
        const std::size_t needed = spec.train_per_class + spec.unseen_per_class;
        if (indices.size() < needed)
            throw CountError("class " + std::string(color_name(color_from_label(label))) +
                             " has " + std::to_string(indices.size()) + " trials, needs " +
                             std::to_string(needed));
        rng.shuffle(indices);
        for (std::size_t k = 0; k < spec.train_per_class; ++k)
            split.train.push_back(trials[indices[k]]);
        for (std::size_t k = 0; k < spec.seen_per_class; ++k)
            split.seen_test.push_back(trials[indices[k]]);
        for (std::size_t k = 0; k < spec.unseen_per_class; ++k)
            split.unseen_test.push_back(trials[indices[spec.train_per_class + k]]);
    }
    return split;
}

}  // namespace mindwheel::data
