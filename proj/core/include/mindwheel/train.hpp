#ifndef MINDWHEEL_TRAIN_HPP
#define MINDWHEEL_TRAIN_HPP

#include <cstdint>
#include <filesystem>
#include <vector>

#include "mindwheel/model.hpp"

namespace mindwheel::clf {

struct TrainConfig {
    double lr = 0.001;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    std::size_t batch_size = 16;   // last partial batch kept
    std::size_t max_epochs = 100;
    double val_fraction = 0.2;     // stratified by class
    // true: phase 1 scans every epoch up to max_epochs (patience-free).
    // false: phase 1 stops once validation loss has not improved for
    // `patience` consecutive epochs.
    bool scan_all_epochs = true;
    std::size_t patience = 5;
    std::uint64_t seed = 7;
};

void validate_config(const TrainConfig& cfg);

struct EpochStats {
    std::size_t epoch = 0;  // 1-based
    double train_loss = 0.0;
    double train_acc = 0.0;
    double val_loss = 0.0;
    double val_acc = 0.0;
};

struct TrainReport {
    std::vector<EpochStats> phase1;
    std::size_t best_epoch = 0;  // argmin validation loss, ties -> earliest
    std::vector<EpochStats> phase2;  // val fields zero; trained on all data
    double final_train_loss = 0.0;
    double final_train_acc = 0.0;
};

// One training example: a windowed trial and its class index in [0, K).
struct Example {
    nn::Tensor window;
    int label = 0;
};

struct TwoPhaseResult {
    Model model;         // phase-2 model, trained on all data to best_epoch
    Model phase1_model;  // phase-1 model after its final epoch
    TrainReport report;
};

// The two-phase protocol: phase 1 holds out a stratified validation split
// and scans epochs to locate the overfit point (argmin validation loss);
// phase 2 reinitializes from the same seed and trains on every example for
// exactly best_epoch epochs. Deterministic given (examples, configs).
TwoPhaseResult train_two_phase(std::vector<Example> examples,
                               const ModelConfig& model_cfg,
                               const TrainConfig& train_cfg);

// Trial-level convenience: windows each trial to (time_steps, features)
// and requires labels in [0, num_classes).
TwoPhaseResult train_two_phase(std::span<const data::Trial> trials,
                               const ModelConfig& model_cfg,
                               const TrainConfig& train_cfg);

// Phase-1 curve CSV: epoch,train_loss,train_acc,val_loss,val_acc.
void write_curves_csv(const std::filesystem::path& path, const TrainReport& report);

}  // namespace mindwheel::clf

#endif
