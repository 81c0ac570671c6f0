#include "attnpath/transcript_io.hpp"

#include "attnpath/errors.hpp"
#include "attnpath/text.hpp"

#include <algorithm>
#include <filesystem>
#include <set>

namespace attnpath {

std::string_view to_string(Label label) {
    return label == Label::AD ? "AD" : "HC";
}

Label parse_label(std::string_view text) {
    if (text == "AD") return Label::AD;
    if (text == "HC") return Label::HC;
    throw ValidationError("unknown label '" + std::string(text) + "' (expected AD or HC)");
}

std::vector<WordToken> parse_ctm(std::string_view text, std::string_view session_id) {
    std::vector<WordToken> tokens;
    const auto lines = split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t lineno = i + 1;
        const auto fields = split_whitespace(lines[i]);
        if (fields.empty() || fields.front().front() == '#') continue;
        if (fields.size() != 5 && fields.size() != 6) {
            throw ParseError(lineno, "expected 5 or 6 fields, got " + std::to_string(fields.size()));
        }
        WordToken token;
        if (!parse_double(fields[2], token.start_s)) throw ParseError(lineno, "non-numeric start time");
        if (!parse_double(fields[3], token.duration_s)) throw ParseError(lineno, "non-numeric duration");
        if (token.start_s < 0.0) throw ParseError(lineno, "negative start time");
        if (token.duration_s <= 0.0) throw ParseError(lineno, "duration must be positive");
        if (fields.size() == 6) {
            if (!parse_double(fields[5], token.confidence)) throw ParseError(lineno, "non-numeric confidence");
            if (token.confidence < 0.0 || token.confidence > 1.0) {
                throw ParseError(lineno, "confidence outside [0, 1]");
            }
        }
        token.word = normalize_word(fields[4]);
        if (token.word.empty()) throw ParseError(lineno, "word is empty after normalization");
        if (fields[0] == session_id) tokens.push_back(std::move(token));
    }

    std::stable_sort(tokens.begin(), tokens.end(),
                     [](const WordToken& a, const WordToken& b) { return a.start_s < b.start_s; });
    for (std::size_t i = 1; i < tokens.size(); ++i) {
        auto& prev = tokens[i - 1];
        auto& cur = tokens[i];
        if (cur.start_s <= prev.start_s) cur.start_s = prev.start_s + kTieNudge;
        if (cur.start_s < prev.end_s() - kOverlapTolerance) {
            throw ValidationError("session " + std::string(session_id) + ": token '" + cur.word + "' at " +
                                  shortest(cur.start_s) + " s overlaps '" + prev.word + "' ending at " +
                                  shortest(prev.end_s()) + " s");
        }
    }
    return tokens;
}

std::string serialize_ctm(const std::vector<WordToken>& tokens, std::string_view session_id, int channel) {
    std::string out;
    for (const auto& t : tokens) {
        out += session_id;
        out += ' ';
        out += std::to_string(channel);
        out += ' ';
        out += shortest(t.start_s);
        out += ' ';
        out += shortest(t.duration_s);
        out += ' ';
        out += t.word;
        out += ' ';
        out += shortest(t.confidence);
        out += '\n';
    }
    return out;
}

std::vector<SessionDescriptor> parse_manifest(std::string_view text) {
    const auto lines = split_lines(text);
    std::size_t i = 0;
    while (i < lines.size() && lines[i].empty()) ++i;
    if (i == lines.size()) throw ValidationError("manifest: missing header");

    const auto header = split_csv_record(lines[i]);
    const std::vector<std::string> required{"session_id", "speaker_id", "label", "ctm_path"};
    const bool has_corpus = header.size() == 5 && header[4] == "corpus";
    if (header.size() < 4 || !std::equal(required.begin(), required.end(), header.begin()) ||
        (header.size() > 4 && !has_corpus)) {
        throw ValidationError("manifest: header must be session_id,speaker_id,label,ctm_path[,corpus]");
    }

    std::vector<SessionDescriptor> rows;
    std::set<std::string> seen;
    for (++i; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const std::string row = "manifest row " + std::to_string(i + 1);
        const auto fields = split_csv_record(lines[i]);
        if (fields.size() != header.size()) {
            throw ValidationError(row + ": expected " + std::to_string(header.size()) + " fields");
        }
        SessionDescriptor d;
        d.session_id = fields[0];
        d.speaker_id = fields[1];
        try {
            d.label = parse_label(fields[2]);
        } catch (const ValidationError& e) {
            throw ValidationError(row + ": " + e.what());
        }
        d.ctm_path = fields[3];
        if (has_corpus) d.corpus = fields[4];
        if (d.session_id.empty() || d.speaker_id.empty() || d.ctm_path.empty()) {
            throw ValidationError(row + ": empty required field");
        }
        if (!seen.insert(d.session_id).second) {
            throw ValidationError(row + ": duplicate session_id '" + d.session_id + "'");
        }
        rows.push_back(std::move(d));
    }
    return rows;
}

std::string serialize_manifest(const std::vector<SessionDescriptor>& rows) {
    const bool has_corpus =
        std::any_of(rows.begin(), rows.end(), [](const SessionDescriptor& d) { return !d.corpus.empty(); });
    std::string out = has_corpus ? "session_id,speaker_id,label,ctm_path,corpus\n"
                                 : "session_id,speaker_id,label,ctm_path\n";
    for (const auto& d : rows) {
        out += csv_escape(d.session_id) + ',' + csv_escape(d.speaker_id) + ',' +
               std::string(to_string(d.label)) + ',' + csv_escape(d.ctm_path);
        if (has_corpus) out += ',' + csv_escape(d.corpus);
        out += '\n';
    }
    return out;
}

std::vector<SessionRecord> load_sessions(const std::string& manifest_path) {
    namespace fs = std::filesystem;
    const auto descriptors = parse_manifest(read_file(manifest_path));
    const fs::path base = fs::path(manifest_path).parent_path();
    std::vector<SessionRecord> sessions;
    sessions.reserve(descriptors.size());
    for (const auto& d : descriptors) {
        fs::path ctm = d.ctm_path;
        if (ctm.is_relative()) ctm = base / ctm;
        SessionRecord s{d.session_id, d.speaker_id, d.label, d.corpus, {}};
        try {
            s.tokens = parse_ctm(read_file(ctm.string()), d.session_id);
        } catch (const ValidationError& e) {
            throw ValidationError(ctm.string() + ": " + e.what());
        }
        sessions.push_back(std::move(s));
    }
    return sessions;
}

}  // namespace attnpath
