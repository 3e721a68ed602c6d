#include "mindwheel/train.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>

#include "mindwheel/optimizer.hpp"

namespace mindwheel::clf {

void validate_config(const TrainConfig& cfg) {
    if (cfg.lr <= 0.0) throw RangeError("learning rate must be positive");
    if (cfg.batch_size == 0) throw RangeError("batch size must be positive");
    if (cfg.max_epochs == 0) throw RangeError("max_epochs must be at least 1");
    if (cfg.val_fraction <= 0.0 || cfg.val_fraction >= 1.0)
        throw RangeError("val_fraction must lie in (0, 1)");
}

namespace {

// Rng stream ids; phase 1 and phase 2 get independent, reproducible streams.
constexpr std::uint64_t kStreamSplit = 1;
constexpr std::uint64_t kStreamShuffle = 2;
constexpr std::uint64_t kStreamDropout = 3;

struct EpochOutcome {
    double loss = 0.0;
    double acc = 0.0;
};

// One optimization epoch over `order`; mutates model and adam step count.
EpochOutcome run_epoch(Model& model, const std::vector<Example>& examples,
                       std::vector<std::size_t>& order, Rng& shuffle_rng,
                       Rng& dropout_rng, const TrainConfig& cfg,
                       std::uint64_t& adam_t, std::size_t epoch_index) {
    shuffle_rng.shuffle(order);
    auto params = model.parameters();
    const nn::AdamConfig adam{cfg.lr, cfg.beta1, cfg.beta2, cfg.eps};

    double loss_sum = 0.0;
    std::size_t correct = 0;

    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
        const std::size_t end = std::min(order.size(), start + cfg.batch_size);
        model.zero_grads();
        for (std::size_t k = start; k < end; ++k) {
            const Example& ex = examples[order[k]];
            Model::ForwardCache cache;
            nn::Tensor probs = model.forward(ex.window, &cache, true, &dropout_rng);
            const double loss = model.backward(ex.label, cache);
            if (!std::isfinite(loss))
                throw NumericError("loss diverged at epoch " + std::to_string(epoch_index));
            loss_sum += loss;

            std::size_t arg = 0;
            for (std::size_t j = 1; j < probs.numel(); ++j)
                if (probs[j] > probs[arg]) arg = j;
            if (static_cast<int>(arg) == ex.label) ++correct;
        }
        const double inv = 1.0 / static_cast<double>(end - start);
        for (auto* p : params)
            for (double& g : p->grad.flat()) g *= inv;
        nn::adam_step(params, ++adam_t, adam);
    }

    EpochOutcome out;
    out.loss = loss_sum / static_cast<double>(order.size());
    out.acc = static_cast<double>(correct) / static_cast<double>(order.size());
    return out;
}

EpochOutcome evaluate_split(const Model& model, const std::vector<Example>& examples,
                            const std::vector<std::size_t>& indices) {
    double loss_sum = 0.0;
    std::size_t correct = 0;
    for (std::size_t idx : indices) {
        const Example& ex = examples[idx];
        Model::ForwardCache cache;
        nn::Tensor probs = model.forward(ex.window, &cache, false, nullptr);
        loss_sum += nn::cross_entropy_from_logits(cache.dense.logits, ex.label).loss;
        std::size_t arg = 0;
        for (std::size_t j = 1; j < probs.numel(); ++j)
            if (probs[j] > probs[arg]) arg = j;
        if (static_cast<int>(arg) == ex.label) ++correct;
    }
    EpochOutcome out;
    out.loss = loss_sum / static_cast<double>(indices.size());
    out.acc = static_cast<double>(correct) / static_cast<double>(indices.size());
    return out;
}

}  // namespace

TwoPhaseResult train_two_phase(std::vector<Example> examples,
                               const ModelConfig& model_cfg,
                               const TrainConfig& train_cfg) {
    validate_config(model_cfg);
    validate_config(train_cfg);
    if (examples.empty()) throw CountError("no training examples");

    std::map<int, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < examples.size(); ++i) {
        const int label = examples[i].label;
        if (label < 0 || static_cast<std::size_t>(label) >= model_cfg.num_classes)
            throw LabelError("training label " + std::to_string(label) +
                             " outside 0.." + std::to_string(model_cfg.num_classes - 1));
        by_class[label].push_back(i);
    }
    if (by_class.size() < 2)
        throw DataError("training data holds a single class; need at least two");

    // Stratified validation split, deterministic in the training seed.
    Rng split_rng = Rng::keyed(train_cfg.seed, kStreamSplit, 0);
    std::vector<std::size_t> train_idx, val_idx;
    for (auto& [label, indices] : by_class) {
        split_rng.shuffle(indices);
        std::size_t n_val = static_cast<std::size_t>(
            std::floor(train_cfg.val_fraction * static_cast<double>(indices.size())));
        if (indices.size() >= 2 && n_val == 0) n_val = 1;
        if (n_val >= indices.size()) n_val = indices.size() - 1;
        for (std::size_t k = 0; k < indices.size(); ++k)
            (k < n_val ? val_idx : train_idx).push_back(indices[k]);
    }
    if (val_idx.empty() || train_idx.empty())
        throw CountError("validation split is empty; need at least 2 examples per class");

    TrainReport report;

    // Phase 1: locate the overfit point on the held-out split.
    Model phase1(model_cfg);
    {
        Rng shuffle_rng = Rng::keyed(train_cfg.seed, kStreamShuffle, 1);
        Rng dropout_rng = Rng::keyed(train_cfg.seed, kStreamDropout, 1);
        std::uint64_t adam_t = 0;
        std::vector<std::size_t> order = train_idx;

        double best_loss = 0.0;
        for (std::size_t epoch = 1; epoch <= train_cfg.max_epochs; ++epoch) {
            EpochOutcome tr = run_epoch(phase1, examples, order, shuffle_rng,
                                        dropout_rng, train_cfg, adam_t, epoch);
            EpochOutcome va = evaluate_split(phase1, examples, val_idx);
            report.phase1.push_back({epoch, tr.loss, tr.acc, va.loss, va.acc});

            if (report.best_epoch == 0 || va.loss < best_loss) {
                report.best_epoch = epoch;
                best_loss = va.loss;
            }
            if (!train_cfg.scan_all_epochs &&
                epoch - report.best_epoch >= train_cfg.patience)
                break;
        }
    }

    // Phase 2: fresh init from the same seed, all data, exactly best_epoch.
    Model phase2(model_cfg);
    {
        Rng shuffle_rng = Rng::keyed(train_cfg.seed, kStreamShuffle, 2);
        Rng dropout_rng = Rng::keyed(train_cfg.seed, kStreamDropout, 2);
        std::uint64_t adam_t = 0;
        std::vector<std::size_t> order(examples.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

        for (std::size_t epoch = 1; epoch <= report.best_epoch; ++epoch) {
            EpochOutcome tr = run_epoch(phase2, examples, order, shuffle_rng,
                                        dropout_rng, train_cfg, adam_t, epoch);
            report.phase2.push_back({epoch, tr.loss, tr.acc, 0.0, 0.0});
            report.final_train_loss = tr.loss;
            report.final_train_acc = tr.acc;
        }
    }

    return TwoPhaseResult{std::move(phase2), std::move(phase1), std::move(report)};
}

TwoPhaseResult train_two_phase(std::span<const data::Trial> trials,
                               const ModelConfig& model_cfg,
                               const TrainConfig& train_cfg) {
    std::vector<Example> examples;
    examples.reserve(trials.size());
    const data::WindowShape shape{model_cfg.time_steps, model_cfg.features};
    for (const data::Trial& t : trials)
        examples.push_back({data::window_trial(t.samples, shape), t.label});
    return train_two_phase(std::move(examples), model_cfg, train_cfg);
}

void write_curves_csv(const std::filesystem::path& path, const TrainReport& report) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw DataError("cannot write curves: " + path.string());
    out << "epoch,train_loss,train_acc,val_loss,val_acc\n";
    char line[256];
    for (const EpochStats& e : report.phase1) {
        std::snprintf(line, sizeof line, "%zu,%.17g,%.17g,%.17g,%.17g\n", e.epoch,
                      e.train_loss, e.train_acc, e.val_loss, e.val_acc);
        out << line;
    }
    if (!out) throw DataError("curve write failed: " + path.string());
}

}  // namespace mindwheel::clf
