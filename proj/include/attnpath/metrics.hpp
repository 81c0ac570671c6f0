#pragma once

#include "attnpath/transcript_io.hpp"

#include <span>
#include <string_view>

namespace attnpath {

enum class Averaging { Macro, Weighted };

Averaging parse_averaging(std::string_view text);
std::string_view to_string(Averaging averaging);

/// Ac/Rc/Pr/F1, each in [0, 1].
struct Metrics {
    double accuracy = 0.0;
    double recall = 0.0;
    double precision = 0.0;
    double f1 = 0.0;
};

/// Per-class precision, recall and F1 over {AD, HC}, then averaged: an
/// unweighted mean (macro) or weighted by true-class support (weighted).
/// Only classes that occur in `truth` or `predicted` take part; a class
/// with an empty denominator scores 0 for that quantity.
Metrics evaluate_metrics(std::span<const Label> predicted, std::span<const Label> truth,
                         Averaging averaging = Averaging::Macro);

}  // namespace attnpath
