#include "attnpath/cli.hpp"

#include "attnpath/aoi_registry.hpp"
#include "attnpath/cross_validation.hpp"
#include "attnpath/errors.hpp"
#include "attnpath/features.hpp"
#include "attnpath/parallel.hpp"
#include "attnpath/scanpath.hpp"
#include "attnpath/synth_corpus.hpp"
#include "attnpath/text.hpp"
#include "attnpath/viz.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <map>
#include <optional>

#ifndef ATTNPATH_DATA_DIR
#define ATTNPATH_DATA_DIR "data"
#endif

namespace attnpath::cli {

namespace fs = std::filesystem;

std::string default_data_dir() {
    if (const char* env = std::getenv("ATTNPATH_DATA_DIR")) return env;
    return ATTNPATH_DATA_DIR;
}

namespace {

/// Everything a subcommand may read from the command line.
struct RunConfig {
    std::string subcommand;
    std::string manifest;
    std::string registry;
    std::string aoa;
    std::string wv;
    std::string out;

    int k = 10;
    std::uint64_t seed = 42;
    double lambda = 1.0;
    int max_iter = 1000;
    double tol = 1e-6;
    double threshold = 0.5;
    std::string mask = "all";
    std::string masks = "aoi,aoa,wv,all";
    std::string averaging = "macro";
    std::vector<std::string> train_corpora;
    std::string test_corpus;

    double cell_size = 5.0;
    double sigma_scale = 0.5;
    std::string group_by = "label";

    std::vector<std::string> sessions;
    std::string background;
    double base_px = 4.0;
    double scale_px = 20.0;

    CorpusSpec corpus;
};

std::string basename_of(const std::string& path) {
    return fs::path(path).filename().string();
}

void require_file(const std::string& flag, const std::string& path) {
    if (path.empty()) throw ValidationError(flag + " is required");
    if (!fs::is_regular_file(path)) throw ValidationError(flag + ": no such file '" + path + "'");
}

/// Output is written into a sibling staging directory and moved into place
/// only after the subcommand succeeds.
class StagedOutput {
public:
    explicit StagedOutput(const std::string& out) : target_(out) {
        if (target_.empty()) throw ValidationError("--out is required");
        if (fs::exists(target_) && !fs::is_directory(target_)) {
            throw ValidationError("--out '" + out + "' exists and is not a directory");
        }
        const fs::path parent = target_.parent_path().empty() ? fs::path(".") : target_.parent_path();
        fs::create_directories(parent);
        staging_ = parent / ("." + target_.filename().string() + ".partial");
        fs::remove_all(staging_);
        fs::create_directories(staging_);
    }

    StagedOutput(const StagedOutput&) = delete;
    StagedOutput& operator=(const StagedOutput&) = delete;

    ~StagedOutput() {
        std::error_code ec;
        if (!committed_) fs::remove_all(staging_, ec);
    }

    fs::path path(const std::string& name) const { return staging_ / name; }
    void write(const std::string& name, std::string_view contents) const {
        const fs::path p = path(name);
        fs::create_directories(p.parent_path());
        write_file(p.string(), contents);
    }

    void commit() {
        if (!fs::exists(target_)) {
            fs::rename(staging_, target_);
        } else {
            for (const auto& entry : fs::recursive_directory_iterator(staging_)) {
                const fs::path dest = target_ / fs::relative(entry.path(), staging_);
                if (entry.is_directory()) {
                    fs::create_directories(dest);
                } else {
                    fs::rename(entry.path(), dest);
                }
            }
            fs::remove_all(staging_);
        }
        committed_ = true;
    }

private:
    fs::path target_;
    fs::path staging_;
    bool committed_ = false;
};

struct Inputs {
    std::vector<SessionRecord> sessions;
    AoiRegistry registry;
    AoaTable aoa;
    WordVectorTable wv;
};

Inputs load_inputs(const RunConfig& cfg, bool need_tables) {
    require_file("--manifest", cfg.manifest);
    require_file("--registry", cfg.registry);
    if (need_tables) {
        require_file("--aoa", cfg.aoa);
        require_file("--wv", cfg.wv);
    }
    Inputs in;
    in.registry = load_registry(read_file(cfg.registry));
    if (need_tables) {
        in.aoa = load_aoa_table(read_file(cfg.aoa));
        in.wv = load_word_vectors(read_file(cfg.wv));
    }
    in.sessions = load_sessions(cfg.manifest);
    return in;
}

std::map<std::string, std::string> input_names(const RunConfig& cfg, bool tables) {
    std::map<std::string, std::string> m{{"manifest", basename_of(cfg.manifest)},
                                         {"registry", basename_of(cfg.registry)}};
    if (tables) {
        m["aoa"] = basename_of(cfg.aoa);
        m["wv"] = basename_of(cfg.wv);
    }
    return m;
}

std::string echo(const RunConfig& cfg, const std::map<std::string, std::string>& inputs,
                 const std::vector<std::pair<std::string, std::string>>& params) {
    std::string s = "attnpath " + cfg.subcommand;
    for (const auto& [key, value] : params) s += " " + key + "=" + value;
    for (const auto& [key, value] : inputs) s += " " + key + "=" + value;
    return s;
}

CvOptions cv_options(const RunConfig& cfg, const std::string& mask) {
    CvOptions o;
    o.k = cfg.k;
    o.seed = cfg.seed;
    o.train.lambda = cfg.lambda;
    o.train.max_iter = cfg.max_iter;
    o.train.tol = cfg.tol;
    o.threshold = cfg.threshold;
    o.mask = parse_feature_mask(mask);
    o.averaging = parse_averaging(cfg.averaging);
    o.train_corpora.insert(cfg.train_corpora.begin(), cfg.train_corpora.end());
    o.test_corpus = cfg.test_corpus;
    o.threads = worker_count();
    return o;
}

int do_synth(const RunConfig& cfg, std::ostream& out) {
    require_file("--registry", cfg.registry);
    cfg.corpus.validate();
    const AoiRegistry registry = load_registry(read_file(cfg.registry));
    StagedOutput staged(cfg.out);
    const GeneratedCorpus corpus = generate_corpus(cfg.corpus, registry);
    write_corpus(corpus, staged.path("").string());
    staged.commit();
    out << "wrote " << corpus.manifest.size() << " sessions to " << cfg.out << "\n";
    return kExitOk;
}

int do_features(const RunConfig& cfg, std::ostream& out) {
    const FeatureMask mask = parse_feature_mask(cfg.mask);
    const Inputs in = load_inputs(cfg, true);
    StagedOutput staged(cfg.out);

    // Without folds, the whole manifest plays the training set.
    const auto vocab = vocabulary(std::span<const SessionRecord>(in.sessions));
    const AoiRegistry registry = filter_registry(in.registry, vocab);
    const Pca pca = fit_vocabulary_pca(vocab, in.wv);

    std::vector<FeatureVector> rows(in.sessions.size());
    parallel_for(in.sessions.size(), worker_count(), [&](std::size_t i) {
        rows[i] = assemble_feature_vector(in.sessions[i], registry, in.aoa, in.wv, pca, mask);
    });
    const std::string comment = echo(cfg, input_names(cfg, true), {{"mask", to_string(mask)}});
    staged.write("features.csv", features_to_csv(rows, comment));
    staged.commit();
    out << "wrote " << rows.size() << " feature rows to " << (fs::path(cfg.out) / "features.csv").string() << "\n";
    return kExitOk;
}

int do_cv(const RunConfig& cfg, std::ostream& out) {
    const CvOptions options = cv_options(cfg, cfg.mask);
    const Inputs in = load_inputs(cfg, true);
    StagedOutput staged(cfg.out);
    const CvReport report = run_cross_validation(in.sessions, in.registry, in.aoa, in.wv, options);
    staged.write("metrics.json", cv_report_to_json(report, options, input_names(cfg, true)));
    staged.write("folds.tsv", fold_report_to_tsv(report));
    staged.write("predictions.csv", predictions_to_csv(report));
    staged.commit();
    out << "accuracy " << fixed(report.metrics.accuracy) << "  recall " << fixed(report.metrics.recall)
        << "  precision " << fixed(report.metrics.precision) << "  f1 " << fixed(report.metrics.f1) << "\n";
    return kExitOk;
}

std::string mask_row_name(const FeatureMask& mask) {
    if (mask == FeatureMask::all()) return "All";
    if (mask == FeatureMask{true, false, false}) return "AOI";
    if (mask == FeatureMask{false, true, false}) return "AoA";
    if (mask == FeatureMask{false, false, true}) return "WV";
    return to_string(mask);
}

int do_report(const RunConfig& cfg, std::ostream& out) {
    std::vector<std::string> masks;
    for (std::string_view rest = cfg.masks; !rest.empty();) {
        const auto comma = rest.find(',');
        masks.emplace_back(rest.substr(0, comma));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    if (masks.empty()) throw ValidationError("--masks is empty");
    std::vector<CvOptions> options;
    for (const auto& m : masks) options.push_back(cv_options(cfg, m));

    const Inputs in = load_inputs(cfg, true);
    StagedOutput staged(cfg.out);

    std::string table = "# " +
                        echo(cfg, input_names(cfg, true),
                             {{"k", std::to_string(cfg.k)},
                              {"seed", std::to_string(cfg.seed)},
                              {"lambda", fixed(cfg.lambda)},
                              {"averaging", cfg.averaging},
                              {"masks", cfg.masks}}) +
                        "\n";
    table += "features\taccuracy\trecall\tprecision\tf1\n";
    std::string json = "[\n";
    for (std::size_t i = 0; i < options.size(); ++i) {
        const CvReport report = run_cross_validation(in.sessions, in.registry, in.aoa, in.wv, options[i]);
        const Metrics& m = report.metrics;
        table += mask_row_name(options[i].mask) + '\t' + fixed(m.accuracy) + '\t' + fixed(m.recall) + '\t' +
                 fixed(m.precision) + '\t' + fixed(m.f1) + '\n';
        json += "  {\"features\": \"" + mask_row_name(options[i].mask) + "\", \"mask\": \"" +
                to_string(options[i].mask) + "\", \"accuracy\": " + fixed(m.accuracy) +
                ", \"recall\": " + fixed(m.recall) + ", \"precision\": " + fixed(m.precision) +
                ", \"f1\": " + fixed(m.f1) + "}" + (i + 1 < options.size() ? ",\n" : "\n");
    }
    json += "]\n";
    staged.write("report.tsv", table);
    staged.write("report.json", json);
    staged.commit();
    out << table;
    return kExitOk;
}

std::vector<Scanpath> all_scanpaths(const Inputs& in) {
    std::vector<Scanpath> paths(in.sessions.size());
    parallel_for(in.sessions.size(), worker_count(), [&](std::size_t i) {
        paths[i] = build_scanpath(in.sessions[i].tokens, in.registry, in.sessions[i].session_id);
    });
    return paths;
}

int do_scanpath(const RunConfig& cfg, std::ostream& out) {
    const Inputs in = load_inputs(cfg, false);
    std::set<std::string> wanted(cfg.sessions.begin(), cfg.sessions.end());
    for (const auto& id : wanted) {
        const bool known = std::any_of(in.sessions.begin(), in.sessions.end(),
                                       [&](const SessionRecord& s) { return s.session_id == id; });
        if (!known) throw ValidationError("--session '" + id + "' is not in the manifest");
    }
    SvgStyle style;
    style.base_px = cfg.base_px;
    style.scale_px = cfg.scale_px;
    style.background = cfg.background;
    StagedOutput staged(cfg.out);
    const auto paths = all_scanpaths(in);
    const std::string comment = echo(cfg, input_names(cfg, false),
                                     {{"base_px", fixed(cfg.base_px)}, {"scale_px", fixed(cfg.scale_px)}});
    std::size_t written = 0;
    for (const auto& path : paths) {
        if (!wanted.empty() && !wanted.contains(path.session_id)) continue;
        staged.write(path.session_id + ".scanpath.svg", render_scanpath_svg(path, in.registry, style, comment));
        staged.write(path.session_id + ".scanpath.jsonl", scanpath_to_jsonl(path));
        ++written;
    }
    staged.commit();
    out << "wrote " << written << " scanpaths to " << cfg.out << "\n";
    return kExitOk;
}

int do_heatmap(const RunConfig& cfg, std::ostream& out) {
    if (cfg.group_by != "label" && cfg.group_by != "corpus") {
        throw ValidationError("--group-by must be 'label' or 'corpus'");
    }
    if (!(cfg.cell_size > 0.0)) throw ValidationError("--cell-size must be positive");
    if (!(cfg.sigma_scale > 0.0)) throw ValidationError("--sigma-scale must be positive");
    const Inputs in = load_inputs(cfg, false);
    StagedOutput staged(cfg.out);
    const auto paths = all_scanpaths(in);

    std::map<std::string, std::vector<Scanpath>> groups;
    for (std::size_t i = 0; i < paths.size(); ++i) {
        const SessionRecord& s = in.sessions[i];
        const std::string key = cfg.group_by == "label" ? std::string(to_string(s.label)) : s.corpus;
        groups[key.empty() ? "default" : key].push_back(paths[i]);
    }
    std::vector<std::string> names;
    if (cfg.group_by == "label") {
        names = {"AD", "HC"};
    } else {
        for (const auto& [name, _] : groups) names.push_back(name);
    }

    const std::string comment = echo(cfg, input_names(cfg, false),
                                     {{"group_by", cfg.group_by},
                                      {"cell_size", fixed(cfg.cell_size)},
                                      {"sigma_scale", fixed(cfg.sigma_scale)}});
    // Reference map: every registry AOI as a one-second fixation.
    Scanpath reference{"reference", {}};
    for (const auto& aoi : in.registry.aois()) {
        reference.fixations.push_back({aoi.name, aoi.x, aoi.y, aoi.radius, 1.0, 0.0, 1, 0.0, 0.0});
    }
    staged.write("reference.heat.pgm",
                 heatmap_to_pgm(accumulate_heatmap(std::span(&reference, 1), in.registry, cfg.cell_size,
                                                   cfg.sigma_scale),
                                comment));

    std::map<std::string, HeatGrid> grids;
    for (const auto& name : names) {
        grids[name] = accumulate_heatmap(groups[name], in.registry, cfg.cell_size, cfg.sigma_scale);
        staged.write(name + ".heat.pgm", heatmap_to_pgm(grids[name], comment));
    }
    for (std::size_t a = 0; a < names.size(); ++a) {
        for (std::size_t b = a + 1; b < names.size(); ++b) {
            const SignedPgm diff = diff_to_pgm(diff_heatmap(grids[names[a]], grids[names[b]]), comment);
            const std::string stem = names[a] + "-minus-" + names[b];
            staged.write(stem + ".pos.pgm", diff.positive);
            staged.write(stem + ".neg.pgm", diff.negative);
        }
    }
    staged.commit();
    out << "wrote heatmaps for " << names.size() << " groups to " << cfg.out << "\n";
    return kExitOk;
}

void add_inputs(CLI::App* app, RunConfig& cfg, bool tables) {
    app->add_option("--manifest", cfg.manifest, "session manifest CSV")->required();
    app->add_option("--registry", cfg.registry, "AOI registry TSV")->capture_default_str();
    if (tables) {
        app->add_option("--aoa", cfg.aoa, "age-of-acquisition TSV")->capture_default_str();
        app->add_option("--wv", cfg.wv, "word-vector text file")->capture_default_str();
    }
    app->add_option("--out", cfg.out, "output directory")->required();
}

void add_cv_flags(CLI::App* app, RunConfig& cfg) {
    app->add_option("--k", cfg.k, "number of speaker-independent folds")->capture_default_str()->check(CLI::Range(2, 1 << 20));
    app->add_option("--seed", cfg.seed, "fold-assignment seed")->capture_default_str();
    app->add_option("--lambda", cfg.lambda, "L2 strength")->capture_default_str()->check(CLI::NonNegativeNumber);
    app->add_option("--max-iter", cfg.max_iter, "gradient-descent iteration cap")->capture_default_str()->check(CLI::PositiveNumber);
    app->add_option("--tol", cfg.tol, "gradient max-norm stopping tolerance")->capture_default_str()->check(CLI::PositiveNumber);
    app->add_option("--threshold", cfg.threshold, "P(AD) decision threshold")->capture_default_str()->check(CLI::Range(0.0, 1.0));
    app->add_option("--averaging", cfg.averaging, "macro or weighted")->capture_default_str()->check(CLI::IsMember({"macro", "weighted"}));
    app->add_option("--train-corpus", cfg.train_corpora, "train only on these manifest corpora (repeatable)");
    app->add_option("--test-corpus", cfg.test_corpus, "score only this manifest corpus");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    const std::string data = default_data_dir();
    cfg.registry = (fs::path(data) / "cookie_theft_registry.tsv").string();
    cfg.aoa = (fs::path(data) / "aoa_fixture.tsv").string();
    cfg.wv = (fs::path(data) / "wordvec_fixture.txt").string();

    CLI::App app{"Pseudo eye-tracking features from timed picture descriptions", "attnpath"};
    app.require_subcommand(1);

    auto* synth = app.add_subcommand("synth", "generate a synthetic AD/HC corpus");
    synth->add_option("--registry", cfg.registry, "AOI registry TSV")->capture_default_str();
    synth->add_option("--out", cfg.out, "output directory")->required();
    synth->add_option("--speakers-per-class", cfg.corpus.n_speakers_per_class)->capture_default_str()->check(CLI::PositiveNumber);
    synth->add_option("--sessions-per-speaker", cfg.corpus.sessions_per_speaker)->capture_default_str()->check(CLI::PositiveNumber);
    synth->add_option("--seed", cfg.corpus.seed)->capture_default_str();
    synth->add_option("--hc-extra-aois", cfg.corpus.hc_extra_aois)->capture_default_str()->check(CLI::NonNegativeNumber);
    synth->add_option("--ad-pause-multiplier", cfg.corpus.ad_pause_multiplier)->capture_default_str()->check(CLI::PositiveNumber);
    synth->add_option("--ad-visit-drop-prob", cfg.corpus.ad_visit_drop_prob)->capture_default_str()->check(CLI::Range(0.0, 1.0));

    auto* features = app.add_subcommand("features", "write the 68-column feature CSV");
    add_inputs(features, cfg, true);
    features->add_option("--mask", cfg.mask, "all, aoi, aoa, wv or a '+' combination")->capture_default_str();

    auto* cv = app.add_subcommand("cv", "speaker-independent cross-validation");
    add_inputs(cv, cfg, true);
    add_cv_flags(cv, cfg);
    cv->add_option("--mask", cfg.mask, "all, aoi, aoa, wv or a '+' combination")->capture_default_str();

    auto* scan = app.add_subcommand("scanpath", "render per-session scanpath SVGs");
    add_inputs(scan, cfg, false);
    scan->add_option("--session", cfg.sessions, "limit to these sessions (repeatable)");
    scan->add_option("--background", cfg.background, "image href drawn under the scanpath");
    scan->add_option("--base-px", cfg.base_px, "circle radius at zero duration")->capture_default_str();
    scan->add_option("--scale-px", cfg.scale_px, "circle radius pixels per second")->capture_default_str();

    auto* heat = app.add_subcommand("heatmap", "group and difference heatmaps as PGM");
    add_inputs(heat, cfg, false);
    heat->add_option("--group-by", cfg.group_by, "label or corpus")->capture_default_str();
    heat->add_option("--cell-size", cfg.cell_size, "grid cell size in pixels")->capture_default_str();
    heat->add_option("--sigma-scale", cfg.sigma_scale, "Gaussian sigma as a fraction of AOI radius")->capture_default_str();

    auto* report = app.add_subcommand("report", "feature-family ablation table");
    add_inputs(report, cfg, true);
    add_cv_flags(report, cfg);
    report->add_option("--masks", cfg.masks, "comma-separated masks, one row each")->capture_default_str();

    std::vector<std::string> argv(args.begin() + (args.empty() ? 0 : 1), args.end());
    std::reverse(argv.begin(), argv.end());
    try {
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        cfg.subcommand = app.get_subcommands().front()->get_name();
        if (cfg.subcommand == "synth") return do_synth(cfg, out);
        if (cfg.subcommand == "features") return do_features(cfg, out);
        if (cfg.subcommand == "cv") return do_cv(cfg, out);
        if (cfg.subcommand == "scanpath") return do_scanpath(cfg, out);
        if (cfg.subcommand == "heatmap") return do_heatmap(cfg, out);
        if (cfg.subcommand == "report") return do_report(cfg, out);
        err << "unknown subcommand\n";
        return kExitValidation;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}

}  // namespace attnpath::cli
