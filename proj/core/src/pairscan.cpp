#include "mindwheel/pairscan.hpp"

#include <set>
#include <string>

namespace mindwheel::clf {

PairScanResult select_best_pair(std::span<const data::Trial> trials,
                                const ModelConfig& model_cfg,
                                const TrainConfig& train_cfg,
                                const data::SplitSpec& split_spec) {
    std::set<int> labels;
    for (const data::Trial& t : trials) labels.insert(t.label);
    if (labels.size() < 2)
        throw CountError("pair scan needs at least two colors");

    PairScanResult result;
    bool have_best = false;
    double best_accuracy = 0.0;

    for (auto a = labels.begin(); a != labels.end(); ++a) {
        for (auto b = std::next(a); b != labels.end(); ++b) {
            const data::Color color_a = data::color_from_label(*a);
            const data::Color color_b = data::color_from_label(*b);
            const std::string pair_name =
                std::string(data::color_name(color_a)) + "+" + data::color_name(color_b);

            std::vector<data::Trial> pair_trials;
            for (const data::Trial& t : trials)
                if (t.label == *a || t.label == *b) pair_trials.push_back(t);

            data::Split split;
            try {
                split = data::split_seen_unseen(pair_trials, split_spec);
            } catch (const CountError& e) {
                throw CountError("pair " + pair_name + ": " + e.what());
            }

            // Local 2-class labels: lower color -> 0, higher -> 1.
            const eval::LabelMap relabel{{*a, 0}, {*b, 1}};
            ModelConfig cfg = model_cfg;
            cfg.num_classes = 2;

            std::vector<Example> examples;
            const data::WindowShape shape{cfg.time_steps, cfg.features};
            for (const data::Trial& t : split.train)
                examples.push_back({data::window_trial(t.samples, shape),
                                    t.label == *a ? 0 : 1});

            TwoPhaseResult trained = train_two_phase(std::move(examples), cfg, train_cfg);

            auto group = [&](const char* type, data::Color color,
                             const std::vector<data::Trial>& pool) {
                eval::TestGroup g{type, color, {}};
                for (const data::Trial& t : pool)
                    if (t.color == color) g.trials.push_back(t);
                return g;
            };
            const std::vector<eval::TestGroup> groups{
                group("seen", color_a, split.seen_test),
                group("seen", color_b, split.seen_test),
                group("unseen", color_a, split.unseen_test),
                group("unseen", color_b, split.unseen_test),
            };

            PairResult pr;
            pr.color_a = color_a;
            pr.color_b = color_b;
            pr.best_epoch = trained.report.best_epoch;
            pr.rows = eval::evaluate(trained.model, groups, relabel);
            pr.accuracy = eval::aggregate_accuracy(pr.rows);
            result.table.push_back(std::move(pr));

            if (!have_best || result.table.back().accuracy > best_accuracy) {
                have_best = true;
                best_accuracy = result.table.back().accuracy;
                result.best = {color_a, color_b};
            }
        }
    }
    return result;
}

}  // namespace mindwheel::clf
