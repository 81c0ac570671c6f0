#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace attnpath {

/// One recognized word with its alignment timing.
struct WordToken {
    std::string word;         ///< normalized
    double start_s = 0.0;     ///< seconds from recording start
    double duration_s = 0.0;  ///< seconds, > 0
    double confidence = 1.0;  ///< in [0, 1]; stored, never used by features

    double end_s() const { return start_s + duration_s; }
    friend bool operator==(const WordToken&, const WordToken&) = default;
};

enum class Label { AD, HC };

std::string_view to_string(Label label);
/// Throws ValidationError on anything other than "AD" or "HC".
Label parse_label(std::string_view text);

/// One manifest row.
struct SessionDescriptor {
    std::string session_id;
    std::string speaker_id;
    Label label = Label::HC;
    std::string ctm_path;
    std::string corpus;  ///< optional fifth column; empty when absent

    friend bool operator==(const SessionDescriptor&, const SessionDescriptor&) = default;
};

struct SessionRecord {
    std::string session_id;
    std::string speaker_id;
    Label label = Label::HC;
    std::string corpus;
    std::vector<WordToken> tokens;
};

/// Tokens may start this much before the previous token ends.
inline constexpr double kOverlapTolerance = 1e-6;
/// Equal start times are pushed apart by this much, in line order.
inline constexpr double kTieNudge = 1e-6;

/// Parses CTM lines `utt_id channel start dur word [conf]`, keeping those
/// whose utt_id equals `session_id`. Every line is validated, matching or
/// not; any error aborts the whole parse.
std::vector<WordToken> parse_ctm(std::string_view text, std::string_view session_id);

/// Inverse of parse_ctm for a single session. Times use the shortest
/// round-trip decimal form.
std::string serialize_ctm(const std::vector<WordToken>& tokens, std::string_view session_id,
                          int channel = 1);

/// CSV with header `session_id,speaker_id,label,ctm_path[,corpus]`.
std::vector<SessionDescriptor> parse_manifest(std::string_view text);

std::string serialize_manifest(const std::vector<SessionDescriptor>& rows);

/// Reads the manifest and every CTM it names. Relative CTM paths resolve
/// against the manifest's directory.
std::vector<SessionRecord> load_sessions(const std::string& manifest_path);

}  // namespace attnpath
