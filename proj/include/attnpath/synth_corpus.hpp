#pragma once

#include "attnpath/aoi_registry.hpp"
#include "attnpath/transcript_io.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace attnpath {

/// Knobs of the synthetic picture-description corpus.
struct CorpusSpec {
    int n_speakers_per_class = 20;
    int sessions_per_speaker = 1;
    std::uint64_t seed = 42;
    /// The last `hc_extra_aois` registry AOIs (window and outside in the
    /// bundled registry) are described by HC speakers only.
    int hc_extra_aois = 2;
    /// Multiplies every AD inter-word gap.
    double ad_pause_multiplier = 2.5;
    /// Chance an AD speaker skips an AOI an HC speaker would mention.
    double ad_visit_drop_prob = 0.4;

    void validate() const;
};

struct CorpusFile {
    std::string path;  ///< relative to the corpus root
    std::string contents;
};

struct GeneratedCorpus {
    std::vector<SessionDescriptor> manifest;
    std::vector<CorpusFile> ctms;  ///< one per manifest row, same order

    std::string manifest_csv() const { return serialize_manifest(manifest); }
    /// Parses the generated CTMs back into sessions without touching disk.
    std::vector<SessionRecord> sessions() const;
};

// Non-AOI vocabulary the generator mixes in. Shared words appear in both
// groups; HC speakers add descriptive words, AD speakers vague ones.
const std::vector<std::string>& synth_function_words();
const std::vector<std::string>& synth_descriptive_words();
const std::vector<std::string>& synth_vague_words();

/// Deterministic for a given CorpusSpec and registry. Probabilities of the
/// per-session script:
///   HC mentions each core AOI with p = 0.85, AD with 0.85 * (1 - drop);
///   each mentioned AOI is revisited later with p = 0.25;
///   HC always mentions every extra AOI;
///   0-2 filler words precede each AOI word.
/// Timing is integral milliseconds: 300-1500 ms lead silence, 200-550 ms
/// words, 40-350 ms gaps with a 10% chance of an 800-2000 ms pause; AD gaps
/// are scaled by ad_pause_multiplier.
GeneratedCorpus generate_corpus(const CorpusSpec& spec, const AoiRegistry& registry);

/// Writes `manifest.csv` and `ctm/*.ctm` under `dir` (created if needed).
void write_corpus(const GeneratedCorpus& corpus, const std::string& dir);

}  // namespace attnpath
