#include "mindwheel/evaluation.hpp"

#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

namespace mindwheel::eval {

EvalRow make_row(std::size_t set_index, std::string data_type, data::Color color,
                 std::size_t n, std::size_t correct) {
    if (n == 0) throw CountError("evaluation row needs at least one trial");
    if (correct > n) throw CountError("correct count exceeds group size");
    EvalRow row;
    row.set_index = set_index;
    row.data_type = std::move(data_type);
    row.color = color;
    row.command = data::label_for(color);
    row.n = n;
    row.correct = correct;
    row.false_count = n - correct;
    row.accuracy = static_cast<double>(correct) / static_cast<double>(n);
    return row;
}

std::vector<EvalRow> evaluate(const clf::Model& model,
                              std::span<const TestGroup> groups,
                              const LabelMap& relabel) {
    const data::WindowShape shape{model.config().time_steps, model.config().features};

    auto mapped = [&](int label) {
        for (const auto& [from, to] : relabel)
            if (from == label) return to;
        return label;
    };

    std::vector<EvalRow> rows;
    rows.reserve(groups.size());
    std::size_t set_index = 1;
    for (const TestGroup& group : groups) {
        if (group.trials.empty())
            throw CountError("empty test group: " + group.data_type + "/" +
                             data::color_name(group.color));
        std::size_t correct = 0;
        for (const data::Trial& t : group.trials) {
            const auto pred = model.predict(data::window_trial(t.samples, shape));
            if (pred.class_id == mapped(t.label)) ++correct;
        }
        rows.push_back(make_row(set_index++, group.data_type, group.color,
                                group.trials.size(), correct));
    }
    return rows;
}

namespace {

// Exact rational accumulator for means of count fractions. Operates on
// unsigned 64-bit numerator/denominator with gcd reduction after every
// step; the magnitudes involved here (counts of trials) stay tiny.
struct Rational {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    void add(std::uint64_t n, std::uint64_t d) {
        const std::uint64_t g = std::gcd(den, d);
        const std::uint64_t scale = d / g;
        num = num * scale + n * (den / g);
        den *= scale;
        reduce();
    }

    void divide(std::uint64_t d) {
        den *= d;
        reduce();
    }

    void reduce() {
        const std::uint64_t g = std::gcd(num == 0 ? den : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    double value() const {
        return static_cast<double>(num) / static_cast<double>(den);
    }
};

}  // namespace

double aggregate_accuracy(std::span<const EvalRow> rows) {
    if (rows.empty()) throw CountError("no evaluation rows to aggregate");
    Rational mean;
    for (const EvalRow& row : rows) mean.add(row.correct, row.n);
    mean.divide(rows.size());
    return mean.value();
}

double aggregate_accuracy_weighted(std::span<const EvalRow> rows) {
    if (rows.empty()) throw CountError("no evaluation rows to aggregate");
    std::uint64_t correct = 0, total = 0;
    for (const EvalRow& row : rows) {
        correct += row.correct;
        total += row.n;
    }
    return static_cast<double>(correct) / static_cast<double>(total);
}

std::vector<std::vector<std::size_t>> confusion_matrix(std::span<const int> predictions,
                                                       std::span<const int> labels,
                                                       std::size_t num_classes) {
    if (predictions.size() != labels.size())
        throw CountError("predictions/labels length mismatch");
    std::vector<std::vector<std::size_t>> m(num_classes,
                                            std::vector<std::size_t>(num_classes, 0));
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const int t = labels[i], p = predictions[i];
        if (t < 0 || static_cast<std::size_t>(t) >= num_classes ||
            p < 0 || static_cast<std::size_t>(p) >= num_classes)
            throw LabelError("label out of range in confusion matrix");
        ++m[static_cast<std::size_t>(t)][static_cast<std::size_t>(p)];
    }
    return m;
}

void write_table_csv(const std::filesystem::path& path, std::span<const EvalRow> rows) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw DataError("cannot write table: " + path.string());
    out << "set,data_type,color,command,n,correct,false,accuracy\n";
    char line[192];
    for (const EvalRow& r : rows) {
        std::snprintf(line, sizeof line, "%zu,%s,%s,%d,%zu,%zu,%zu,%.17g\n",
                      r.set_index, r.data_type.c_str(), data::color_name(r.color),
                      r.command, r.n, r.correct, r.false_count, r.accuracy);
        out << line;
    }
    char avg[64];
    std::snprintf(avg, sizeof avg, "average,,,,,,,%.17g\n",
                  aggregate_accuracy(rows));
    out << avg;
    if (!out) throw DataError("table write failed: " + path.string());
}

std::string format_table_text(std::span<const EvalRow> rows) {
    std::ostringstream out;
    char line[160];
    std::snprintf(line, sizeof line, "%-4s %-9s %-7s %-8s %-6s %-8s %-6s %s\n",
                  "Set", "DataType", "Color", "Command", "N", "Correct", "False",
                  "Accuracy");
    out << line;
    for (const EvalRow& r : rows) {
        std::snprintf(line, sizeof line, "%-4zu %-9s %-7s %-8d %-6zu %-8zu %-6zu %.2f%%\n",
                      r.set_index, r.data_type.c_str(), data::color_name(r.color),
                      r.command, r.n, r.correct, r.false_count, 100.0 * r.accuracy);
        out << line;
    }
    std::snprintf(line, sizeof line, "%-52s Average  %.2f%%\n", "",
                  100.0 * aggregate_accuracy(rows));
    out << line;
    return out.str();
}

}  // namespace mindwheel::eval
