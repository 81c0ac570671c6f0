#include "attnpath/synth_corpus.hpp"

#include "attnpath/errors.hpp"
#include "attnpath/rng.hpp"
#include "attnpath/text.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>

namespace attnpath {

namespace {

constexpr double kMentionProb = 0.85;
constexpr double kRevisitProb = 0.25;
constexpr double kLongPauseProb = 0.10;

template <typename T>
const T& pick(const std::vector<T>& v, SplitMix64& rng) {
    return v[static_cast<std::size_t>(rng.below(v.size()))];
}

std::string format_ms(std::int64_t ms) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%lld.%03lld", static_cast<long long>(ms / 1000), static_cast<long long>(ms % 1000));
    return buf;
}

std::string speaker_name(Label label, int index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%03d", label == Label::AD ? "ad" : "hc", index + 1);
    return buf;
}

std::string session_ctm(const std::string& session_id, Label label, const CorpusSpec& spec,
                        const AoiRegistry& registry, SplitMix64& rng) {
    const auto& aois = registry.aois();
    const auto extra = static_cast<std::size_t>(spec.hc_extra_aois);
    const std::size_t core = aois.size() - extra;
    const bool ad = label == Label::AD;

    std::vector<std::size_t> order(core);
    for (std::size_t i = 0; i < core; ++i) order[i] = i;
    shuffle(order, rng);

    const double mention = ad ? kMentionProb * (1.0 - spec.ad_visit_drop_prob) : kMentionProb;
    std::vector<std::size_t> visits;
    for (std::size_t a : order) {
        if (rng.bernoulli(mention)) visits.push_back(a);
    }
    if (!ad) {
        for (std::size_t a = core; a < aois.size(); ++a) {
            const auto at = static_cast<std::ptrdiff_t>(rng.below(visits.size() + 1));
            visits.insert(visits.begin() + at, a);
        }
    }
    const std::vector<std::size_t> first_pass = visits;
    for (std::size_t i = 0; i < first_pass.size(); ++i) {
        if (!rng.bernoulli(kRevisitProb)) continue;
        // Somewhere after the first mention.
        const auto first = static_cast<std::size_t>(std::find(visits.begin(), visits.end(), first_pass[i]) - visits.begin());
        const auto span = visits.size() - first;
        const auto at = static_cast<std::ptrdiff_t>(first + 1 + rng.below(span));
        visits.insert(visits.begin() + at, first_pass[i]);
    }

    const auto& fillers = ad ? synth_vague_words() : synth_descriptive_words();
    std::vector<std::string> words;
    for (std::size_t a : visits) {
        const auto n_fill = rng.below(3);
        for (std::uint64_t j = 0; j < n_fill; ++j) {
            words.push_back(rng.bernoulli(0.5) ? pick(synth_function_words(), rng) : pick(fillers, rng));
        }
        const std::vector<std::string> lemmas(aois[a].lemmas.begin(), aois[a].lemmas.end());
        words.push_back(pick(lemmas, rng));
    }
    if (words.empty()) words.push_back(pick(fillers, rng));

    std::string out;
    std::int64_t t = 300 + static_cast<std::int64_t>(rng.below(1201));
    for (const auto& w : words) {
        const std::int64_t dur = 200 + static_cast<std::int64_t>(rng.below(351));
        const auto conf = 55 + static_cast<int>(rng.below(46));
        char conf_buf[16];
        std::snprintf(conf_buf, sizeof conf_buf, "%d.%02d", conf / 100, conf % 100);
        out += session_id + " 1 " + format_ms(t) + " " + format_ms(dur) + " " + w + " " + conf_buf + "\n";
        double gap = 40.0 + static_cast<double>(rng.below(311));
        if (rng.bernoulli(kLongPauseProb)) gap = 800.0 + static_cast<double>(rng.below(1201));
        if (ad) gap *= spec.ad_pause_multiplier;
        t += dur + static_cast<std::int64_t>(std::llround(gap));
    }
    return out;
}

}  // namespace

void CorpusSpec::validate() const {
    if (n_speakers_per_class < 1 || sessions_per_speaker < 1) {
        throw ValidationError("corpus: speaker and session counts must be >= 1");
    }
    if (hc_extra_aois < 0) throw ValidationError("corpus: hc_extra_aois must be >= 0");
    if (!(ad_pause_multiplier > 0.0)) throw ValidationError("corpus: ad_pause_multiplier must be positive");
    if (!(ad_visit_drop_prob >= 0.0 && ad_visit_drop_prob <= 1.0)) {
        throw ValidationError("corpus: ad_visit_drop_prob must lie in [0, 1]");
    }
}

const std::vector<std::string>& synth_function_words() {
    static const std::vector<std::string> words{"the", "a", "and", "is", "there", "he", "she", "it", "on", "of", "to", "in"};
    return words;
}

const std::vector<std::string>& synth_descriptive_words() {
    static const std::vector<std::string> words{"kitchen",  "afternoon", "careless", "distracted", "busy",
                                                "unaware",  "happening", "apparently", "meanwhile", "precarious"};
    return words;
}

const std::vector<std::string>& synth_vague_words() {
    static const std::vector<std::string> words{"uh", "um", "thing", "something", "stuff", "know", "like", "oh"};
    return words;
}

GeneratedCorpus generate_corpus(const CorpusSpec& spec, const AoiRegistry& registry) {
    spec.validate();
    if (registry.empty()) throw ValidationError("corpus: registry has no AOIs");
    if (static_cast<std::size_t>(spec.hc_extra_aois) >= registry.size()) {
        throw ValidationError("corpus: hc_extra_aois must leave at least one shared AOI");
    }
    SplitMix64 rng(spec.seed);
    GeneratedCorpus corpus;
    for (Label label : {Label::HC, Label::AD}) {
        for (int s = 0; s < spec.n_speakers_per_class; ++s) {
            const std::string speaker = speaker_name(label, s);
            for (int j = 0; j < spec.sessions_per_speaker; ++j) {
                const std::string session = speaker + "-" + std::to_string(j + 1);
                const std::string path = "ctm/" + session + ".ctm";
                corpus.manifest.push_back({session, speaker, label, path, {}});
                corpus.ctms.push_back({path, session_ctm(session, label, spec, registry, rng)});
            }
        }
    }
    return corpus;
}

std::vector<SessionRecord> GeneratedCorpus::sessions() const {
    std::vector<SessionRecord> out;
    out.reserve(manifest.size());
    for (std::size_t i = 0; i < manifest.size(); ++i) {
        const auto& d = manifest[i];
        out.push_back({d.session_id, d.speaker_id, d.label, d.corpus, parse_ctm(ctms[i].contents, d.session_id)});
    }
    return out;
}

void write_corpus(const GeneratedCorpus& corpus, const std::string& dir) {
    namespace fs = std::filesystem;
    const fs::path root(dir);
    fs::create_directories(root / "ctm");
    write_file((root / "manifest.csv").string(), corpus.manifest_csv());
    for (const auto& f : corpus.ctms) write_file((root / f.path).string(), f.contents);
}

}  // namespace attnpath
