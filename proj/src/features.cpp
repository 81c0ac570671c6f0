#include "attnpath/features.hpp"

#include "attnpath/errors.hpp"
#include "attnpath/text.hpp"

namespace attnpath {

const std::array<std::string, kFeatureCount>& feature_names() {
    static const auto names = [] {
        const std::array<std::string_view, 4> stats{"mean", "std", "min", "max"};
        std::vector<std::string> columns{"aoi_x_coordinate",   "aoi_y_coordinate",   "aoi_radius",
                                         "aoi_time_spent",     "aoi_time_to_approach", "aoi_number_of_visits",
                                         "aoi_transition_time", "aoi_pause_length",   "mean_aoa",
                                         "std_aoa"};
        for (int i = 1; i <= kWvComponents; ++i) columns.push_back("wv" + std::to_string(i));
        std::array<std::string, kFeatureCount> out;
        std::size_t n = 0;
        for (const auto& c : columns) {
            for (auto s : stats) out[n++] = c + "_" + std::string(s);
        }
        return out;
    }();
    return names;
}

AoaTable load_aoa_table(std::string_view text) {
    AoaTable table;
    const auto lines = split_lines(text);
    bool first_row = true;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto fields = split_whitespace(lines[i]);
        if (fields.empty() || fields.front().front() == '#') continue;
        if (fields.size() != 3) throw ParseError(i + 1, "expected 'word mean_aoa std_aoa'");
        AoaEntry e;
        const bool numeric = parse_double(fields[1], e.mean_aoa) && parse_double(fields[2], e.std_aoa);
        if (!numeric && first_row) {
            first_row = false;
            continue;
        }
        first_row = false;
        if (!numeric) throw ParseError(i + 1, "non-numeric AoA value");
        if (!(e.mean_aoa > 0.0)) throw ParseError(i + 1, "mean_aoa must be positive");
        if (e.std_aoa < 0.0) throw ParseError(i + 1, "std_aoa must be non-negative");
        std::string word = normalize_word(fields[0]);
        if (word.empty()) throw ParseError(i + 1, "empty word");
        if (!table.emplace(std::move(word), e).second) throw ParseError(i + 1, "duplicate word");
    }
    return table;
}

void WordVectorTable::insert(std::string word, Eigen::VectorXd vector) {
    if (vector.size() != dim_) throw ValidationError("word vector '" + word + "' has the wrong dimension");
    vectors_.insert_or_assign(std::move(word), std::move(vector));
}

const Eigen::VectorXd* WordVectorTable::find(std::string_view word) const {
    auto it = vectors_.find(std::string(word));
    return it == vectors_.end() ? nullptr : &it->second;
}

WordVectorTable load_word_vectors(std::string_view text) {
    const auto lines = split_lines(text);
    std::size_t i = 0;
    for (; i < lines.size(); ++i) {
        const auto f = split_whitespace(lines[i]);
        if (!f.empty() && f.front().front() != '#') break;
    }
    if (i == lines.size()) throw ValidationError("word vectors: missing dimension header");

    const auto header = split_whitespace(lines[i]);
    long long count = -1, dim = 0;
    const bool ok = header.size() == 1   ? parse_int(header[0], dim)
                    : header.size() == 2 ? parse_int(header[0], count) && parse_int(header[1], dim)
                                         : false;
    if (!ok || dim <= 0) throw ParseError(i + 1, "expected header '<dim>' or '<count> <dim>'");

    WordVectorTable table(static_cast<Eigen::Index>(dim));
    std::set<std::string> seen;
    for (++i; i < lines.size(); ++i) {
        const auto fields = split_whitespace(lines[i]);
        if (fields.empty() || fields.front().front() == '#') continue;
        if (static_cast<long long>(fields.size()) != dim + 1) {
            throw ParseError(i + 1, "expected " + std::to_string(dim) + " components");
        }
        Eigen::VectorXd v(dim);
        for (long long j = 0; j < dim; ++j) {
            if (!parse_double(fields[j + 1], v(j))) throw ParseError(i + 1, "non-numeric component");
        }
        std::string word = normalize_word(fields[0]);
        if (word.empty()) throw ParseError(i + 1, "empty word");
        if (!seen.insert(word).second) throw ParseError(i + 1, "duplicate word '" + word + "'");
        table.insert(std::move(word), std::move(v));
    }
    if (count >= 0 && static_cast<long long>(table.size()) != count) {
        throw ValidationError("word vectors: header declares " + std::to_string(count) + " words, found " +
                              std::to_string(table.size()));
    }
    return table;
}

FeatureMask parse_feature_mask(std::string_view text) {
    if (text == "all") return FeatureMask::all();
    FeatureMask mask{false, false, false};
    while (!text.empty()) {
        const auto plus = text.find('+');
        const auto part = text.substr(0, plus);
        if (part == "aoi") mask.aoi = true;
        else if (part == "aoa") mask.aoa = true;
        else if (part == "wv") mask.wv = true;
        else throw ValidationError("unknown feature family '" + std::string(part) + "'");
        if (plus == std::string_view::npos) break;
        text.remove_prefix(plus + 1);
    }
    if (!mask.aoi && !mask.aoa && !mask.wv) throw ValidationError("empty feature mask");
    return mask;
}

std::string to_string(const FeatureMask& mask) {
    if (mask == FeatureMask::all()) return "all";
    std::string out;
    auto add = [&](bool on, const char* name) {
        if (!on) return;
        if (!out.empty()) out += '+';
        out += name;
    };
    add(mask.aoi, "aoi");
    add(mask.aoa, "aoa");
    add(mask.wv, "wv");
    return out;
}

Eigen::MatrixXd aoi_rows(const Scanpath& path) {
    Eigen::MatrixXd rows(static_cast<Eigen::Index>(path.fixations.size()), kAoiColumns);
    for (Eigen::Index r = 0; r < rows.rows(); ++r) {
        const Fixation& f = path.fixations[static_cast<std::size_t>(r)];
        rows.row(r) << f.x, f.y, f.radius, f.time_spent_s, f.time_to_approach_s, static_cast<double>(f.visit_index),
            f.transition_time_s, f.cumulative_pause_s;
    }
    return rows;
}

Eigen::Matrix<double, kAoiBlockSize, 1> aoi_feature_block(const Scanpath& path) {
    return summarize_stats(aoi_rows(path)).flatten();
}

Eigen::Matrix<double, kAoaBlockSize, 1> aoa_feature_block(std::span<const WordToken> tokens, const AoaTable& table) {
    std::vector<AoaEntry> hits;
    for (const auto& t : tokens) {
        auto it = table.find(t.word);
        if (it != table.end()) hits.push_back(it->second);
    }
    Eigen::MatrixXd rows(static_cast<Eigen::Index>(hits.size()), kAoaColumns);
    for (Eigen::Index r = 0; r < rows.rows(); ++r) {
        rows(r, 0) = hits[static_cast<std::size_t>(r)].mean_aoa;
        rows(r, 1) = hits[static_cast<std::size_t>(r)].std_aoa;
    }
    return summarize_stats(rows).flatten();
}

Eigen::VectorXd wv_feature_block(std::span<const WordToken> tokens, const WordVectorTable& table, const Pca& pca) {
    if (pca.dim() != table.dim()) throw ValidationError("wv_feature_block: PCA and word vectors disagree on dimension");
    std::vector<const Eigen::VectorXd*> hits;
    for (const auto& t : tokens) {
        if (const auto* v = table.find(t.word)) hits.push_back(v);
    }
    Eigen::MatrixXd rows(static_cast<Eigen::Index>(hits.size()), pca.k());
    for (Eigen::Index r = 0; r < rows.rows(); ++r) {
        rows.row(r) = pca.project(*hits[static_cast<std::size_t>(r)]).transpose();
    }
    return summarize_stats(rows).flatten();
}

Eigen::MatrixXd vocabulary_matrix(const std::set<std::string>& vocab, const WordVectorTable& table) {
    std::vector<const Eigen::VectorXd*> hits;
    for (const auto& w : vocab) {
        if (const auto* v = table.find(w)) hits.push_back(v);
    }
    Eigen::MatrixXd m(static_cast<Eigen::Index>(hits.size()), table.dim());
    for (Eigen::Index r = 0; r < m.rows(); ++r) m.row(r) = hits[static_cast<std::size_t>(r)]->transpose();
    return m;
}

Pca fit_vocabulary_pca(const std::set<std::string>& vocab, const WordVectorTable& table, Eigen::Index k) {
    const Eigen::MatrixXd samples = vocabulary_matrix(vocab, table);
    if (samples.rows() == 0) return Pca::zero(table.dim(), k);
    return fit_pca(samples, k);
}

FeatureVector assemble_feature_vector(const SessionRecord& session, const AoiRegistry& registry,
                                      const AoaTable& aoa, const WordVectorTable& wv, const Pca& pca,
                                      const FeatureMask& mask) {
    FeatureVector fv{session.session_id, session.speaker_id, session.label, FeatureValues::Zero()};
    if (mask.aoi) {
        const Scanpath path = build_scanpath(session.tokens, registry, session.session_id);
        fv.values.segment<kAoiBlockSize>(kAoiOffset) = aoi_feature_block(path);
    }
    if (mask.aoa) fv.values.segment<kAoaBlockSize>(kAoaOffset) = aoa_feature_block(session.tokens, aoa);
    if (mask.wv) {
        if (pca.k() != kWvComponents) throw ValidationError("assemble_feature_vector: PCA must have 7 components");
        fv.values.segment<kWvBlockSize>(kWvOffset) = wv_feature_block(session.tokens, wv, pca);
    }
    return fv;
}

std::set<std::string> vocabulary(std::span<const SessionRecord> sessions) {
    std::set<std::string> vocab;
    for (const auto& s : sessions) {
        for (const auto& t : s.tokens) vocab.insert(t.word);
    }
    return vocab;
}

std::set<std::string> vocabulary(std::span<const SessionRecord* const> sessions) {
    std::set<std::string> vocab;
    for (const auto* s : sessions) {
        for (const auto& t : s->tokens) vocab.insert(t.word);
    }
    return vocab;
}

std::string features_to_csv(std::span<const FeatureVector> rows, std::string_view header_comment) {
    std::string out;
    if (!header_comment.empty()) {
        out += "# ";
        out += header_comment;
        out += '\n';
    }
    out += "session_id,speaker_id,label";
    for (const auto& name : feature_names()) out += ',' + name;
    out += '\n';
    for (const auto& row : rows) {
        out += csv_escape(row.session_id) + ',' + csv_escape(row.speaker_id) + ',' + std::string(to_string(row.label));
        for (Eigen::Index i = 0; i < kFeatureCount; ++i) out += ',' + fixed(row.values(i));
        out += '\n';
    }
    return out;
}

}  // namespace attnpath
