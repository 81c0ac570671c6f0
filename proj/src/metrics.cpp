#include "attnpath/metrics.hpp"

#include "attnpath/errors.hpp"

#include <array>
#include <string>

namespace attnpath {

Averaging parse_averaging(std::string_view text) {
    if (text == "macro") return Averaging::Macro;
    if (text == "weighted") return Averaging::Weighted;
    throw ValidationError("unknown averaging '" + std::string(text) + "' (expected macro or weighted)");
}

std::string_view to_string(Averaging averaging) {
    return averaging == Averaging::Macro ? "macro" : "weighted";
}

Metrics evaluate_metrics(std::span<const Label> predicted, std::span<const Label> truth, Averaging averaging) {
    if (predicted.size() != truth.size()) throw ValidationError("evaluate_metrics: length mismatch");
    if (truth.empty()) throw ValidationError("evaluate_metrics: no predictions");

    std::size_t correct = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) correct += predicted[i] == truth[i];

    auto ratio = [](std::size_t num, std::size_t den) {
        return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
    };

    Metrics m;
    m.accuracy = ratio(correct, truth.size());
    const std::array<Label, 2> classes{Label::AD, Label::HC};
    struct Counts {
        std::size_t tp = 0, predicted = 0, support = 0;
    };
    std::array<Counts, 2> counts{};
    std::size_t present = 0;
    for (std::size_t c = 0; c < classes.size(); ++c) {
        for (std::size_t i = 0; i < truth.size(); ++i) {
            counts[c].tp += predicted[i] == classes[c] && truth[i] == classes[c];
            counts[c].predicted += predicted[i] == classes[c];
            counts[c].support += truth[i] == classes[c];
        }
        present += counts[c].predicted + counts[c].support > 0;
    }
    for (const auto& [tp, predicted_c, support] : counts) {
        if (predicted_c + support == 0) continue;
        const double p = ratio(tp, predicted_c);
        const double r = ratio(tp, support);
        const double f = p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
        const double weight =
            averaging == Averaging::Macro ? 1.0 / static_cast<double>(present) : ratio(support, truth.size());
        m.precision += weight * p;
        m.recall += weight * r;
        m.f1 += weight * f;
    }
    return m;
}

}  // namespace attnpath
