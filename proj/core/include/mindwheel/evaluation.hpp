#ifndef MINDWHEEL_EVALUATION_HPP
#define MINDWHEEL_EVALUATION_HPP

#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mindwheel/model.hpp"

namespace mindwheel::eval {

// One result-table row, mirroring the seen/unseen per-color layout.
struct EvalRow {
    std::size_t set_index = 0;   // 1-based
    std::string data_type;       // "seen" or "unseen"
    data::Color color = data::Color::red;
    int command = 0;             // the color's dataset label
    std::size_t n = 0;
    std::size_t correct = 0;
    std::size_t false_count = 0;
    double accuracy = 0.0;       // correct / n
};

EvalRow make_row(std::size_t set_index, std::string data_type, data::Color color,
                 std::size_t n, std::size_t correct);

struct TestGroup {
    std::string data_type;  // "seen" or "unseen"
    data::Color color = data::Color::red;
    std::vector<data::Trial> trials;
};

// Maps a dataset label to the model's class index; empty = identity.
// Used when a 2-class model was trained on a relabeled color pair.
using LabelMap = std::vector<std::pair<int, int>>;

// One row per group, counting argmax predictions. Throws CountError on an
// empty group.
std::vector<EvalRow> evaluate(const clf::Model& model,
                              std::span<const TestGroup> groups,
                              const LabelMap& relabel = {});

// Unweighted mean of row accuracies, computed in exact rational arithmetic
// from the integer counts and rounded once at the end.
double aggregate_accuracy(std::span<const EvalRow> rows);

// Sample-weighted alternative: total correct / total n.
double aggregate_accuracy_weighted(std::span<const EvalRow> rows);

// confusion[i][j] = count of true class i predicted j.
std::vector<std::vector<std::size_t>> confusion_matrix(std::span<const int> predictions,
                                                       std::span<const int> labels,
                                                       std::size_t num_classes);

// CSV columns: set,data_type,color,command,n,correct,false,accuracy.
void write_table_csv(const std::filesystem::path& path, std::span<const EvalRow> rows);

// Aligned plain-text table in the paper's column order, with the average row.
std::string format_table_text(std::span<const EvalRow> rows);

}  // namespace mindwheel::eval

#endif
