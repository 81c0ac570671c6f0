#pragma once

#include "attnpath/aoi_registry.hpp"
#include "attnpath/pca.hpp"
#include "attnpath/scanpath.hpp"
#include "attnpath/stats.hpp"
#include "attnpath/transcript_io.hpp"

#include <Eigen/Dense>

#include <array>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace attnpath {

// Frozen layout: AOI block (8 columns x 4 stats), AoA block (2 x 4), WV block (7 x 4).
inline constexpr int kAoiColumns = 8;
inline constexpr int kAoaColumns = 2;
inline constexpr int kWvComponents = 7;
inline constexpr int kStatsPerColumn = 4;
inline constexpr int kAoiBlockSize = kAoiColumns * kStatsPerColumn;
inline constexpr int kAoaBlockSize = kAoaColumns * kStatsPerColumn;
inline constexpr int kWvBlockSize = kWvComponents * kStatsPerColumn;
inline constexpr int kFeatureCount = kAoiBlockSize + kAoaBlockSize + kWvBlockSize;

inline constexpr int kAoiOffset = 0;
inline constexpr int kAoaOffset = kAoiBlockSize;
inline constexpr int kWvOffset = kAoiBlockSize + kAoaBlockSize;

using FeatureValues = Eigen::Matrix<double, kFeatureCount, 1>;
using Pca = PcaModel<double>;

/// The 68 column names: `aoi_x_coordinate_mean`, ..., `wv7_max`.
const std::array<std::string, kFeatureCount>& feature_names();

struct AoaEntry {
    double mean_aoa = 0.0;  ///< years, > 0
    double std_aoa = 0.0;   ///< years, >= 0
};

using AoaTable = std::map<std::string, AoaEntry, std::less<>>;

/// Rows `word<TAB>mean_aoa<TAB>std_aoa`; an optional header row whose numeric
/// fields do not parse is skipped; `#` lines are comments.
AoaTable load_aoa_table(std::string_view text);

/// Word -> embedding, all of one dimension.
class WordVectorTable {
public:
    explicit WordVectorTable(Eigen::Index dim = 0) : dim_(dim) {}

    Eigen::Index dim() const { return dim_; }
    std::size_t size() const { return vectors_.size(); }

    void insert(std::string word, Eigen::VectorXd vector);
    const Eigen::VectorXd* find(std::string_view word) const;

private:
    Eigen::Index dim_;
    std::unordered_map<std::string, Eigen::VectorXd> vectors_;
};

/// Text embeddings: a header line `<dim>` or `<count> <dim>`, then one
/// `word v1 ... v_dim` row per word.
WordVectorTable load_word_vectors(std::string_view text);

/// Which feature families contribute. Masked-out blocks are written as zeros
/// so the layout never changes.
struct FeatureMask {
    bool aoi = true;
    bool aoa = true;
    bool wv = true;

    static FeatureMask all() { return {}; }
    friend bool operator==(const FeatureMask&, const FeatureMask&) = default;
};

/// Parses "all", "aoi", "aoa", "wv" or a '+'-joined combination ("aoi+aoa").
FeatureMask parse_feature_mask(std::string_view text);
std::string to_string(const FeatureMask& mask);

struct FeatureVector {
    std::string session_id;
    std::string speaker_id;
    Label label = Label::HC;
    FeatureValues values = FeatureValues::Zero();
};

/// Per-fixation rows over x, y, radius, time_spent, time_to_approach,
/// visit_index, transition_time, cumulative_pause.
Eigen::MatrixXd aoi_rows(const Scanpath& path);

Eigen::Matrix<double, kAoiBlockSize, 1> aoi_feature_block(const Scanpath& path);

/// Words absent from the table are skipped.
Eigen::Matrix<double, kAoaBlockSize, 1> aoa_feature_block(std::span<const WordToken> tokens, const AoaTable& table);

/// Projects each in-table word onto the axes of `pca` and summarizes the
/// projections: 4 * pca.k() values (28 for the standard 7-axis model).
Eigen::VectorXd wv_feature_block(std::span<const WordToken> tokens, const WordVectorTable& table, const Pca& pca);

/// One row per unique in-table word of `vocab`, in sorted word order.
Eigen::MatrixXd vocabulary_matrix(const std::set<std::string>& vocab, const WordVectorTable& table);

/// PCA over the vocabulary's embeddings. With no in-table words the model is
/// all zeros.
Pca fit_vocabulary_pca(const std::set<std::string>& vocab, const WordVectorTable& table,
                       Eigen::Index k = kWvComponents);

/// AOI || AoA || WV. `registry` is expected to be train-filtered already.
FeatureVector assemble_feature_vector(const SessionRecord& session, const AoiRegistry& registry,
                                      const AoaTable& aoa, const WordVectorTable& wv, const Pca& pca,
                                      const FeatureMask& mask = FeatureMask::all());

/// Every distinct word across the sessions' transcripts.
std::set<std::string> vocabulary(std::span<const SessionRecord> sessions);
std::set<std::string> vocabulary(std::span<const SessionRecord* const> sessions);

/// `header_comment` (without '#') becomes a leading comment line when non-empty.
std::string features_to_csv(std::span<const FeatureVector> rows, std::string_view header_comment = {});

}  // namespace attnpath
