#ifndef MINDWHEEL_PAIRSCAN_HPP
#define MINDWHEEL_PAIRSCAN_HPP

#include <utility>
#include <vector>

#include "mindwheel/evaluation.hpp"
#include "mindwheel/train.hpp"

namespace mindwheel::clf {

struct PairResult {
    data::Color color_a = data::Color::red;  // lower label of the pair
    data::Color color_b = data::Color::blue;
    double accuracy = 0.0;                   // unweighted mean over 4 rows
    std::size_t best_epoch = 0;
    std::vector<eval::EvalRow> rows;         // seen a, seen b, unseen a, unseen b
};

struct PairScanResult {
    std::pair<data::Color, data::Color> best;
    std::vector<PairResult> table;  // every pair, label-lexicographic order
};

// Trains a 2-class model per unordered color pair on identical split
// parameters and seeds, evaluates each on its seen+unseen pool, and picks
// the highest-accuracy pair (ties resolve to the lexicographically first
// pair by label). Throws CountError naming the pair that lacks data.
PairScanResult select_best_pair(std::span<const data::Trial> trials,
                                const ModelConfig& model_cfg,
                                const TrainConfig& train_cfg,
                                const data::SplitSpec& split_spec);

}  // namespace mindwheel::clf

#endif
