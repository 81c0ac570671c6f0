#pragma once

#include "attnpath/aoi_registry.hpp"
#include "attnpath/features.hpp"
#include "attnpath/logreg.hpp"
#include "attnpath/metrics.hpp"
#include "attnpath/transcript_io.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace attnpath {

struct FoldPlan {
    int k = 0;
    std::map<std::string, int> assignments;  ///< speaker_id -> fold in [0, k)

    int fold_of(const std::string& speaker_id) const;
    std::vector<std::string> speakers_in(int fold) const;
    std::vector<std::size_t> session_load(std::span<const std::pair<std::string, std::size_t>> speakers) const;
};

/// Speaker-grouped k folds balanced by recording count. Speakers are
/// shuffled with SplitMix64(seed), stably ordered by descending session
/// count, then each goes to the fold with the fewest sessions so far
/// (lowest index on ties).
FoldPlan grouped_kfold(std::span<const std::pair<std::string, std::size_t>> speakers, int k, std::uint64_t seed);

/// (speaker_id, session count) in first-appearance order.
std::vector<std::pair<std::string, std::size_t>> speaker_sessions(std::span<const SessionRecord> sessions);

struct CvOptions {
    int k = 10;
    std::uint64_t seed = 42;
    TrainOptions train;
    FeatureMask mask = FeatureMask::all();
    Averaging averaging = Averaging::Macro;
    double threshold = 0.5;
    /// When non-empty, only sessions from these corpora are trained on.
    std::set<std::string> train_corpora;
    /// When non-empty, only sessions from this corpus are scored.
    std::string test_corpus;
    unsigned threads = 1;
};

struct SessionPrediction {
    std::string session_id;
    std::string speaker_id;
    int fold = 0;
    Label truth = Label::HC;
    Label predicted = Label::HC;
    double probability = 0.0;  ///< P(AD)
};

struct FoldReport {
    int fold = 0;
    std::size_t train_sessions = 0;
    std::size_t test_sessions = 0;
    std::size_t test_speakers = 0;
    std::size_t registry_aois = 0;     ///< AOIs surviving the train-vocabulary filter
    std::size_t pca_vocabulary = 0;    ///< in-table words the fold's PCA was fit on
    int train_iterations = 0;
    bool converged = false;
    Metrics metrics;                   ///< on this fold's test sessions alone
};

struct CvReport {
    FoldPlan plan;
    std::vector<FoldReport> folds;
    std::vector<SessionPrediction> predictions;  ///< manifest order
    Metrics metrics;                             ///< pooled over all folds
};

/// Everything a single fold learns from its training sessions.
struct FoldModel {
    AoiRegistry registry;
    Pca pca;
    LogRegModel model;
};

/// Filters the registry and fits PCA on the training vocabulary, extracts
/// features, and trains the classifier.
FoldModel fit_fold(std::span<const SessionRecord* const> train, const AoiRegistry& registry, const AoaTable& aoa,
                   const WordVectorTable& wv, const CvOptions& options);

/// Per fold: train-vocabulary registry filter, PCA, feature extraction,
/// training and scoring; predictions are pooled and scored once.
CvReport run_cross_validation(std::span<const SessionRecord> sessions, const AoiRegistry& registry,
                              const AoaTable& aoa, const WordVectorTable& wv, const CvOptions& options);

/// Metrics JSON with 6-decimal reals. `inputs` is echoed into config.
std::string cv_report_to_json(const CvReport& report, const CvOptions& options,
                              const std::map<std::string, std::string>& inputs = {});

/// Tab-separated per-fold table.
std::string fold_report_to_tsv(const CvReport& report);

/// Per-session predictions as CSV.
std::string predictions_to_csv(const CvReport& report);

}  // namespace attnpath
