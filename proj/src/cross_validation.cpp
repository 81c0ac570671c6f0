#include "attnpath/cross_validation.hpp"

#include "attnpath/errors.hpp"
#include "attnpath/parallel.hpp"
#include "attnpath/rng.hpp"
#include "attnpath/text.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>
#include <optional>

namespace attnpath {

int FoldPlan::fold_of(const std::string& speaker_id) const {
    auto it = assignments.find(speaker_id);
    if (it == assignments.end()) throw ValidationError("speaker '" + speaker_id + "' has no fold");
    return it->second;
}

std::vector<std::string> FoldPlan::speakers_in(int fold) const {
    std::vector<std::string> out;
    for (const auto& [speaker, f] : assignments) {
        if (f == fold) out.push_back(speaker);
    }
    return out;
}

std::vector<std::size_t> FoldPlan::session_load(std::span<const std::pair<std::string, std::size_t>> speakers) const {
    std::vector<std::size_t> load(static_cast<std::size_t>(k), 0);
    for (const auto& [speaker, count] : speakers) load[static_cast<std::size_t>(fold_of(speaker))] += count;
    return load;
}

FoldPlan grouped_kfold(std::span<const std::pair<std::string, std::size_t>> speakers, int k, std::uint64_t seed) {
    if (k < 2) throw ValidationError("grouped_kfold: k must be at least 2");
    std::set<std::string> distinct;
    for (const auto& [speaker, count] : speakers) {
        if (count == 0) throw ValidationError("grouped_kfold: speaker '" + speaker + "' has no sessions");
        if (!distinct.insert(speaker).second) throw ValidationError("grouped_kfold: duplicate speaker '" + speaker + "'");
    }
    if (static_cast<std::size_t>(k) > distinct.size()) {
        throw ValidationError("grouped_kfold: k=" + std::to_string(k) + " exceeds the " +
                              std::to_string(distinct.size()) + " distinct speakers");
    }

    std::vector<std::pair<std::string, std::size_t>> order(speakers.begin(), speakers.end());
    SplitMix64 rng(seed);
    shuffle(order, rng);
    std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.second > b.second; });

    FoldPlan plan;
    plan.k = k;
    std::vector<std::size_t> load(static_cast<std::size_t>(k), 0);
    for (const auto& [speaker, count] : order) {
        const auto fold = static_cast<std::size_t>(std::min_element(load.begin(), load.end()) - load.begin());
        load[fold] += count;
        plan.assignments.emplace(speaker, static_cast<int>(fold));
    }
    return plan;
}

std::vector<std::pair<std::string, std::size_t>> speaker_sessions(std::span<const SessionRecord> sessions) {
    std::vector<std::pair<std::string, std::size_t>> out;
    std::map<std::string, std::size_t> index;
    for (const auto& s : sessions) {
        auto [it, inserted] = index.emplace(s.speaker_id, out.size());
        if (inserted) out.emplace_back(s.speaker_id, 0);
        ++out[it->second].second;
    }
    return out;
}

namespace {

Eigen::MatrixXd feature_matrix(std::span<const SessionRecord* const> sessions, const AoiRegistry& registry,
                               const AoaTable& aoa, const WordVectorTable& wv, const Pca& pca,
                               const FeatureMask& mask) {
    Eigen::MatrixXd X(static_cast<Eigen::Index>(sessions.size()), kFeatureCount);
    for (std::size_t i = 0; i < sessions.size(); ++i) {
        X.row(static_cast<Eigen::Index>(i)) =
            assemble_feature_vector(*sessions[i], registry, aoa, wv, pca, mask).values.transpose();
    }
    return X;
}

}  // namespace

FoldModel fit_fold(std::span<const SessionRecord* const> train, const AoiRegistry& registry, const AoaTable& aoa,
                   const WordVectorTable& wv, const CvOptions& options) {
    const auto vocab = vocabulary(train);
    FoldModel fm{filter_registry(registry, vocab), fit_vocabulary_pca(vocab, wv), {}};
    const Eigen::MatrixXd X = feature_matrix(train, fm.registry, aoa, wv, fm.pca, options.mask);
    Eigen::VectorXd y(X.rows());
    for (std::size_t i = 0; i < train.size(); ++i) y(static_cast<Eigen::Index>(i)) = train[i]->label == Label::AD;
    fm.model = train_logreg(X, y, options.train);
    return fm;
}

CvReport run_cross_validation(std::span<const SessionRecord> sessions, const AoiRegistry& registry,
                              const AoaTable& aoa, const WordVectorTable& wv, const CvOptions& options) {
    if (sessions.empty()) throw ValidationError("cross-validation: no sessions");
    const auto speakers = speaker_sessions(sessions);

    CvReport report;
    report.plan = grouped_kfold(speakers, options.k, options.seed);
    report.folds.resize(static_cast<std::size_t>(options.k));

    std::vector<int> session_fold(sessions.size());
    for (std::size_t i = 0; i < sessions.size(); ++i) session_fold[i] = report.plan.fold_of(sessions[i].speaker_id);

    auto trains_on = [&](const SessionRecord& s) {
        return options.train_corpora.empty() || options.train_corpora.contains(s.corpus);
    };
    auto scored = [&](const SessionRecord& s) { return options.test_corpus.empty() || s.corpus == options.test_corpus; };

    // Per-session predictions, written by exactly one fold each.
    std::vector<std::optional<SessionPrediction>> slots(sessions.size());

    parallel_for(static_cast<std::size_t>(options.k), options.threads, [&](std::size_t f) {
        const int fold = static_cast<int>(f);
        std::vector<const SessionRecord*> train, test;
        std::vector<std::size_t> test_index;
        bool has_ad = false, has_hc = false;
        for (std::size_t i = 0; i < sessions.size(); ++i) {
            const SessionRecord& s = sessions[i];
            if (session_fold[i] == fold) {
                if (scored(s)) {
                    test.push_back(&s);
                    test_index.push_back(i);
                }
            } else if (trains_on(s)) {
                train.push_back(&s);
                (s.label == Label::AD ? has_ad : has_hc) = true;
            }
        }
        if (!has_ad || !has_hc) {
            throw ValidationError("fold " + std::to_string(fold) + ": training set lacks the " +
                                  (has_ad ? "HC" : "AD") + " class; use another seed or a smaller k");
        }

        const FoldModel fm = fit_fold(train, registry, aoa, wv, options);
        FoldReport& fr = report.folds[f];
        fr.fold = fold;
        fr.train_sessions = train.size();
        fr.test_sessions = test.size();
        fr.test_speakers = report.plan.speakers_in(fold).size();
        fr.registry_aois = fm.registry.size();
        fr.pca_vocabulary = static_cast<std::size_t>(vocabulary_matrix(vocabulary(train), wv).rows());
        fr.train_iterations = fm.model.iterations;
        fr.converged = fm.model.converged;

        std::vector<Label> predicted, truth;
        for (std::size_t j = 0; j < test.size(); ++j) {
            const SessionRecord& s = *test[j];
            const FeatureVector fv = assemble_feature_vector(s, fm.registry, aoa, wv, fm.pca, options.mask);
            const double p = predict_proba(fm.model, Eigen::VectorXd(fv.values));
            const Label label = p >= options.threshold ? Label::AD : Label::HC;
            slots[test_index[j]] = SessionPrediction{s.session_id, s.speaker_id, fold, s.label, label, p};
            predicted.push_back(label);
            truth.push_back(s.label);
        }
        if (!truth.empty()) fr.metrics = evaluate_metrics(predicted, truth, options.averaging);
    });

    std::vector<Label> predicted, truth;
    for (auto& slot : slots) {
        if (!slot) continue;
        predicted.push_back(slot->predicted);
        truth.push_back(slot->truth);
        report.predictions.push_back(std::move(*slot));
    }
    if (truth.empty()) throw ValidationError("cross-validation: no session was scored");
    report.metrics = evaluate_metrics(predicted, truth, options.averaging);
    return report;
}

namespace {

void append_metrics(std::string& out, const Metrics& m) {
    out += "\"accuracy\": " + fixed(m.accuracy) + ", \"recall\": " + fixed(m.recall) +
           ", \"precision\": " + fixed(m.precision) + ", \"f1\": " + fixed(m.f1);
}

std::string quote(const std::string& s) {
    return nlohmann::json(s).dump();
}

}  // namespace

std::string cv_report_to_json(const CvReport& report, const CvOptions& options,
                              const std::map<std::string, std::string>& inputs) {
    std::string out = "{\n  ";
    append_metrics(out, report.metrics);
    out += ",\n  \"sessions_scored\": " + std::to_string(report.predictions.size());
    out += ",\n  \"per_fold\": [";
    for (std::size_t i = 0; i < report.folds.size(); ++i) {
        const FoldReport& f = report.folds[i];
        out += i == 0 ? "\n    {" : ",\n    {";
        out += "\"fold\": " + std::to_string(f.fold);
        out += ", \"train_sessions\": " + std::to_string(f.train_sessions);
        out += ", \"test_sessions\": " + std::to_string(f.test_sessions);
        out += ", \"test_speakers\": " + std::to_string(f.test_speakers);
        out += ", \"registry_aois\": " + std::to_string(f.registry_aois);
        out += ", \"pca_vocabulary\": " + std::to_string(f.pca_vocabulary);
        out += ", \"iterations\": " + std::to_string(f.train_iterations);
        out += std::string(", \"converged\": ") + (f.converged ? "true" : "false") + ", ";
        append_metrics(out, f.metrics);
        out += "}";
    }
    out += "\n  ],\n  \"config\": {";
    out += "\"k\": " + std::to_string(options.k);
    out += ", \"seed\": " + std::to_string(options.seed);
    out += ", \"lambda\": " + fixed(options.train.lambda);
    out += ", \"tol\": " + fixed(options.train.tol);
    out += ", \"max_iter\": " + std::to_string(options.train.max_iter);
    out += ", \"threshold\": " + fixed(options.threshold);
    out += ", \"mask\": " + quote(to_string(options.mask));
    out += ", \"averaging\": " + quote(std::string(to_string(options.averaging)));
    if (!options.train_corpora.empty()) {
        out += ", \"train_corpora\": [";
        bool first = true;
        for (const auto& c : options.train_corpora) {
            out += (first ? "" : ", ") + quote(c);
            first = false;
        }
        out += "]";
    }
    if (!options.test_corpus.empty()) out += ", \"test_corpus\": " + quote(options.test_corpus);
    if (!inputs.empty()) {
        out += ", \"inputs\": {";
        bool first = true;
        for (const auto& [key, value] : inputs) {
            out += (first ? "" : ", ") + quote(key) + ": " + quote(value);
            first = false;
        }
        out += "}";
    }
    out += "}\n}\n";
    return out;
}

std::string fold_report_to_tsv(const CvReport& report) {
    std::string out =
        "fold\ttrain_sessions\ttest_sessions\ttest_speakers\tregistry_aois\tpca_vocabulary\titerations\tconverged\t"
        "accuracy\trecall\tprecision\tf1\n";
    for (const auto& f : report.folds) {
        out += std::to_string(f.fold) + '\t' + std::to_string(f.train_sessions) + '\t' +
               std::to_string(f.test_sessions) + '\t' + std::to_string(f.test_speakers) + '\t' +
               std::to_string(f.registry_aois) + '\t' + std::to_string(f.pca_vocabulary) + '\t' +
               std::to_string(f.train_iterations) + '\t' + (f.converged ? "1" : "0") + '\t' +
               fixed(f.metrics.accuracy) + '\t' + fixed(f.metrics.recall) + '\t' + fixed(f.metrics.precision) +
               '\t' + fixed(f.metrics.f1) + '\n';
    }
    return out;
}

std::string predictions_to_csv(const CvReport& report) {
    std::string out = "session_id,speaker_id,fold,truth,predicted,p_ad\n";
    for (const auto& p : report.predictions) {
        out += csv_escape(p.session_id) + ',' + csv_escape(p.speaker_id) + ',' + std::to_string(p.fold) + ',' +
               std::string(to_string(p.truth)) + ',' + std::string(to_string(p.predicted)) + ',' +
               fixed(p.probability) + '\n';
    }
    return out;
}

}  // namespace attnpath
