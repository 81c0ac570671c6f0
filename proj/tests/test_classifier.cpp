#include "attnpath/cross_validation.hpp"
#include "attnpath/errors.hpp"
#include "attnpath/logreg.hpp"
#include "attnpath/metrics.hpp"
#include "attnpath/rng.hpp"
#include "attnpath/synth_corpus.hpp"
#include "oracles/numeric.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <json.hpp>

using namespace attnpath;

namespace {

Eigen::MatrixXd random_matrix(SplitMix64& rng, Eigen::Index rows, Eigen::Index cols) {
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.uniform(-2.0, 2.0);
    return m;
}

/// Two overlapping Gaussian-ish clouds; not linearly separable.
void overlapping_problem(SplitMix64& rng, Eigen::MatrixXd& X, Eigen::VectorXd& y, int n = 40) {
    X.resize(n, 3);
    y.resize(n);
    for (int i = 0; i < n; ++i) {
        y(i) = i % 2;
        const double shift = y(i) == 1 ? 0.6 : -0.6;
        X(i, 0) = shift + rng.uniform(-1.5, 1.5);
        X(i, 1) = 3.0 + rng.uniform(-1.0, 1.0);
        X(i, 2) = -shift * 10 + rng.uniform(-20.0, 20.0);
    }
}

}  // namespace

TEST_CASE("fit_standardizer") {
    Eigen::MatrixXd X(2, 2);
    X << 1, 5, 3, 5;
    const auto s = fit_standardizer(X);
    CHECK(s.mean(0) == 2.0);
    CHECK(s.scale(0) == 1.0);
    CHECK(s.mean(1) == 5.0);
    CHECK(s.scale(1) == 1.0);

    SplitMix64 rng(4);
    const Eigen::MatrixXd R = random_matrix(rng, 30, 4) * 7.0;
    const auto z = fit_standardizer(R).transform(R);
    for (Eigen::Index j = 0; j < 4; ++j) {
        CHECK(std::abs(z.col(j).mean()) < 1e-12);
        CHECK(std::sqrt(z.col(j).array().square().mean()) == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(fit_standardizer(Eigen::MatrixXd(0, 3)), ValidationError);
}

TEST_CASE("analytic gradient matches central differences") {
    SplitMix64 rng(20);
    for (int trial = 0; trial < 5; ++trial) {
        const Eigen::MatrixXd X = random_matrix(rng, 20, 5);
        Eigen::VectorXd y(20), w(5);
        for (int i = 0; i < 20; ++i) y(i) = rng.bernoulli(0.5);
        for (int j = 0; j < 5; ++j) w(j) = rng.uniform(-1, 1);
        const double b = rng.uniform(-1, 1);
        const double lambda = rng.uniform(0, 2);

        const auto obj = logistic_objective(X, y, w, b, lambda);
        std::vector<std::vector<double>> rows;
        for (int i = 0; i < 20; ++i) rows.push_back({X(i, 0), X(i, 1), X(i, 2), X(i, 3), X(i, 4)});
        const std::vector<double> yy(y.data(), y.data() + 20);
        std::vector<double> params(w.data(), w.data() + 5);
        params.push_back(b);
        CHECK(obj.loss == doctest::Approx(oracle::naive_logistic_loss(rows, yy, params, lambda)).epsilon(1e-12));
        const auto fd = oracle::central_difference(
            [&](const std::vector<double>& p) { return oracle::naive_logistic_loss(rows, yy, p, lambda); }, params);
        for (int j = 0; j < 6; ++j) {
            const double g = j < 5 ? obj.grad_w(j) : obj.grad_b;
            CHECK(std::abs(g - fd[static_cast<std::size_t>(j)]) <= 1e-5 * std::max(std::abs(g), 1e-3));
        }
    }
}

TEST_CASE("train_logreg symmetric 1-D problem") {
    Eigen::MatrixXd X(2, 1);
    X << -1, 1;
    Eigen::VectorXd y(2);
    y << 0, 1;
    const auto model = train_logreg(X, y, {.lambda = 1e-3});
    CHECK(model.converged);
    const Eigen::VectorXd origin = Eigen::VectorXd::Zero(1);
    CHECK(std::abs(predict_proba(model, origin) - 0.5) < 1e-6);
    CHECK(predict_proba(model, Eigen::VectorXd(Eigen::VectorXd::Constant(1, 1.0))) > 0.5);
}

TEST_CASE("train_logreg single-class data converges") {
    SplitMix64 rng(6);
    const Eigen::MatrixXd X = random_matrix(rng, 15, 4);
    const Eigen::VectorXd y = Eigen::VectorXd::Ones(15);
    const auto model = train_logreg(X, y, {.lambda = 1.0});
    CHECK(model.converged);
    CHECK(model.iterations < 1000);
    for (Eigen::Index i = 0; i < 15; ++i) CHECK(predict_proba(model, Eigen::VectorXd(X.row(i).transpose())) >= 0.5);
    CHECK(predict_proba(model, Eigen::VectorXd(Eigen::VectorXd::Constant(4, 10.0))) >= 0.5);
}

TEST_CASE("train_logreg loss never increases and reaches tolerance") {
    SplitMix64 rng(12);
    Eigen::MatrixXd X;
    Eigen::VectorXd y;
    overlapping_problem(rng, X, y);
    const auto model = train_logreg(X, y, {.lambda = 0.1, .max_iter = 5000, .tol = 1e-8, .record_loss = true});
    CHECK(model.converged);
    REQUIRE(model.loss_history.size() > 1);
    for (std::size_t i = 1; i < model.loss_history.size(); ++i) CHECK(model.loss_history[i] <= model.loss_history[i - 1]);

    const auto obj = logistic_objective(model.scaler.transform(X), y, model.weights, model.bias, 0.1);
    CHECK(std::max(obj.grad_w.cwiseAbs().maxCoeff(), std::abs(obj.grad_b)) < 1e-8);
}

TEST_CASE("train_logreg input validation") {
    Eigen::MatrixXd X(2, 1);
    X << 0, std::numeric_limits<double>::infinity();
    Eigen::VectorXd y(2);
    y << 0, 1;
    CHECK_THROWS_AS(train_logreg(X, y), ValidationError);
    X << 0, 1;
    CHECK_THROWS_AS(train_logreg(X, Eigen::VectorXd::Constant(2, 2.0)), ValidationError);
    CHECK_THROWS_AS(train_logreg(X, Eigen::VectorXd::Zero(3)), ValidationError);
}

TEST_CASE("predict_proba") {
    LogRegModel zero;
    zero.weights = Eigen::VectorXd::Zero(3);
    zero.scaler.mean = Eigen::VectorXd::Zero(3);
    zero.scaler.scale = Eigen::VectorXd::Ones(3);
    CHECK(predict_proba(zero, Eigen::VectorXd(Eigen::VectorXd::Constant(3, 123.0))) == 0.5);
    CHECK_THROWS_AS(predict_proba(zero, Eigen::VectorXd(Eigen::VectorXd::Zero(4))), ValidationError);

    LogRegModel m;
    m.weights = (Eigen::VectorXd(2) << 0.5, -1.0).finished();
    m.bias = 0.25;
    m.scaler.mean = (Eigen::VectorXd(2) << 1.0, 2.0).finished();
    m.scaler.scale = (Eigen::VectorXd(2) << 2.0, 4.0).finished();
    // standardized (1, 0) -> z = 0.5 + 0.25
    CHECK(predict_proba(m, (Eigen::VectorXd(2) << 3.0, 2.0).finished()) ==
          doctest::Approx(1.0 / (1.0 + std::exp(-0.75))).epsilon(1e-15));

    double prev = 0.0;
    for (double x = -50; x <= 50; x += 0.5) {
        const double p = predict_proba(m, (Eigen::VectorXd(2) << x, 2.0).finished());
        CHECK(p >= prev);
        prev = p;
    }
    for (double x : {-1e6, 1e6}) {
        const double p = predict_proba(m, (Eigen::VectorXd(2) << x, -x).finished());
        CHECK(p > 0.0);
        CHECK(p < 1.0);
    }
}

TEST_CASE("standardization absorbs positive column scaling") {
    SplitMix64 rng(31);
    Eigen::MatrixXd X;
    Eigen::VectorXd y;
    overlapping_problem(rng, X, y);
    const TrainOptions opt{.lambda = 0.0, .max_iter = 20000, .tol = 1e-7};
    const auto base = train_logreg(X, y, opt);
    REQUIRE(base.converged);
    for (double factor : {1e-3, 7.5, 1e4}) {
        Eigen::MatrixXd scaled = X;
        scaled.col(1) *= factor;
        scaled.col(2) *= factor * 0.5;
        const auto model = train_logreg(scaled, y, opt);
        REQUIRE(model.converged);
        for (Eigen::Index i = 0; i < X.rows(); ++i) {
            const bool a = predict_proba(base, Eigen::VectorXd(X.row(i).transpose())) >= 0.5;
            const bool b = predict_proba(model, Eigen::VectorXd(scaled.row(i).transpose())) >= 0.5;
            CHECK(a == b);
        }
    }
}

TEST_CASE("evaluate_metrics") {
    using L = Label;
    const std::vector<L> truth{L::AD, L::AD, L::HC, L::HC};
    const auto m = evaluate_metrics(std::vector<L>{L::AD, L::HC, L::HC, L::HC}, truth);
    CHECK(m.accuracy == doctest::Approx(0.75));
    CHECK(m.precision == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
    CHECK(m.recall == doctest::Approx(0.75));
    CHECK(m.f1 == doctest::Approx(11.0 / 15.0).epsilon(1e-12));

    const auto perfect = evaluate_metrics(truth, truth);
    CHECK(perfect.accuracy == 1.0);
    CHECK(perfect.recall == 1.0);
    CHECK(perfect.precision == 1.0);
    CHECK(perfect.f1 == 1.0);

    const auto wrong = evaluate_metrics(std::vector<L>{L::HC, L::HC, L::AD, L::AD}, truth);
    CHECK(wrong.accuracy == 0.0);
    CHECK(wrong.f1 == 0.0);

    // weighted: supports AD 1, HC 3
    const std::vector<L> t2{L::AD, L::HC, L::HC, L::HC};
    const auto w = evaluate_metrics(std::vector<L>{L::AD, L::AD, L::HC, L::HC}, t2, Averaging::Weighted);
    // AD: P .5 R 1 F1 2/3; HC: P 1 R 2/3 F1 .8
    CHECK(w.precision == doctest::Approx(0.25 * 0.5 + 0.75 * 1.0));
    CHECK(w.recall == doctest::Approx(0.25 * 1.0 + 0.75 * (2.0 / 3.0)));
    CHECK(w.f1 == doctest::Approx(0.25 * (2.0 / 3.0) + 0.75 * 0.8));

    // A fold with one class only averages over that class.
    const std::vector<L> hc_only{L::HC, L::HC};
    CHECK(evaluate_metrics(hc_only, hc_only).f1 == 1.0);

    CHECK_THROWS_AS(evaluate_metrics(std::vector<L>{}, std::vector<L>{}), ValidationError);
    CHECK_THROWS_AS(evaluate_metrics(std::vector<L>{L::AD}, truth), ValidationError);
    CHECK(parse_averaging("weighted") == Averaging::Weighted);
    CHECK_THROWS_AS(parse_averaging("micro"), ValidationError);
}

TEST_CASE("grouped_kfold examples") {
    using Speakers = std::vector<std::pair<std::string, std::size_t>>;
    const Speakers four{{"a", 1}, {"b", 1}, {"c", 1}, {"d", 1}};
    const auto plan = grouped_kfold(four, 2, 1);
    CHECK(plan.speakers_in(0).size() == 2);
    CHECK(plan.speakers_in(1).size() == 2);

    const Speakers skewed{{"a", 3}, {"b", 1}, {"c", 1}, {"d", 1}};
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto p = grouped_kfold(skewed, 2, seed);
        const auto big = p.fold_of("a");
        CHECK(p.speakers_in(big) == std::vector<std::string>{"a"});
        CHECK(p.speakers_in(1 - big).size() == 3);
        CHECK(p.session_load(skewed) == std::vector<std::size_t>{3, 3});
    }

    CHECK(grouped_kfold(four, 3, 9).assignments == grouped_kfold(four, 3, 9).assignments);
    CHECK_THROWS_AS(grouped_kfold(four, 5, 0), ValidationError);
    CHECK_THROWS_AS(grouped_kfold(four, 1, 0), ValidationError);
}

TEST_CASE("grouped_kfold properties") {
    SplitMix64 rng(55);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::pair<std::string, std::size_t>> speakers;
        const int n = 2 + static_cast<int>(rng.below(40));
        for (int i = 0; i < n; ++i) speakers.emplace_back("s" + std::to_string(i), 1 + rng.below(4));
        const int k = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
        const auto plan = grouped_kfold(speakers, k, rng.next());
        CHECK(plan.assignments.size() == speakers.size());
        std::size_t covered = 0;
        for (int f = 0; f < k; ++f) {
            const auto members = plan.speakers_in(f);
            CHECK(!members.empty());
            covered += members.size();
        }
        CHECK(covered == speakers.size());
    }
}

namespace {

struct Fixture {
    AoiRegistry registry = test::default_registry();
    AoaTable aoa = load_aoa_table(read_file(std::string(ATTNPATH_DATA_DIR) + "/aoa_fixture.tsv"));
    WordVectorTable wv = load_word_vectors(read_file(std::string(ATTNPATH_DATA_DIR) + "/wordvec_fixture.txt"));
};

const Fixture& fixture() {
    static const Fixture f;
    return f;
}

std::vector<SessionRecord> small_corpus(int per_class, int sessions = 1, std::uint64_t seed = 3) {
    CorpusSpec spec;
    spec.n_speakers_per_class = per_class;
    spec.sessions_per_speaker = sessions;
    spec.seed = seed;
    return generate_corpus(spec, fixture().registry).sessions();
}

}  // namespace

TEST_CASE("cross-validation keeps speakers out of their own training folds") {
    const auto sessions = small_corpus(6, 2);
    const auto& f = fixture();
    CvOptions o;
    o.k = 4;
    const auto report = run_cross_validation(sessions, f.registry, f.aoa, f.wv, o);
    CHECK(report.predictions.size() == sessions.size());
    std::map<std::string, int> fold_of_speaker;
    for (const auto& p : report.predictions) {
        auto [it, inserted] = fold_of_speaker.emplace(p.speaker_id, p.fold);
        CHECK(it->second == p.fold);
        CHECK(report.plan.fold_of(p.speaker_id) == p.fold);
    }
    std::size_t tested = 0;
    for (const auto& fr : report.folds) {
        CHECK(fr.train_sessions + fr.test_sessions == sessions.size());
        tested += fr.test_sessions;
    }
    CHECK(tested == sessions.size());
    CHECK(report.metrics.f1 >= 0.0);
}

TEST_CASE("leave-one-speaker-out runs") {
    const auto sessions = small_corpus(4);
    const auto& f = fixture();
    CvOptions o;
    o.k = 8;
    const auto report = run_cross_validation(sessions, f.registry, f.aoa, f.wv, o);
    CHECK(report.folds.size() == 8);
    for (const auto& fr : report.folds) CHECK(fr.test_speakers == 1);
}

TEST_CASE("a fold without both classes in training is an error naming it") {
    auto sessions = small_corpus(2);
    // Relabel so only one HC speaker remains; its fold trains on AD alone.
    for (auto& s : sessions) {
        if (s.speaker_id == "hc002") s.label = Label::AD;
    }
    const auto& f = fixture();
    CvOptions o;
    o.k = 4;
    CHECK_THROWS_WITH_AS(run_cross_validation(sessions, f.registry, f.aoa, f.wv, o), doctest::Contains("fold "),
                         ValidationError);
}

TEST_CASE("cross-validation is deterministic and thread-count independent") {
    const auto sessions = small_corpus(8);
    const auto& f = fixture();
    CvOptions o;
    o.k = 4;
    o.seed = 17;
    const auto a = cv_report_to_json(run_cross_validation(sessions, f.registry, f.aoa, f.wv, o), o);
    CHECK(a == cv_report_to_json(run_cross_validation(sessions, f.registry, f.aoa, f.wv, o), o));
    o.threads = 4;
    CHECK(a == cv_report_to_json(run_cross_validation(sessions, f.registry, f.aoa, f.wv, o), o));

    const auto json = nlohmann::json::parse(a);
    CHECK(json["config"]["k"] == 4);
    CHECK(json["config"]["seed"] == 17);
    CHECK(json["config"]["mask"] == "all");
    CHECK(json["per_fold"].size() == 4);
    CHECK(a.find("\"lambda\": 1.000000") != std::string::npos);
}

TEST_CASE("mixed-corpus training scores only the test corpus") {
    auto sessions = small_corpus(6);
    for (std::size_t i = 0; i < sessions.size(); ++i) sessions[i].corpus = i % 3 == 0 ? "iva" : "dem";
    const auto& f = fixture();
    CvOptions o;
    o.k = 3;
    o.train_corpora = {"dem"};
    o.test_corpus = "iva";
    const auto report = run_cross_validation(sessions, f.registry, f.aoa, f.wv, o);
    const auto n_iva = static_cast<std::size_t>(std::count_if(sessions.begin(), sessions.end(),
                                                              [](auto& s) { return s.corpus == "iva"; }));
    CHECK(report.predictions.size() == n_iva);
    for (const auto& p : report.predictions) CHECK(p.session_id.size() > 0);
    for (const auto& fr : report.folds) CHECK(fr.train_sessions + fr.test_sessions <= sessions.size());
}
