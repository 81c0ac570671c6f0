#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace attnpath {

/// A circular picture region and the words that elicit it.
struct Aoi {
    std::string name;
    double x = 0.0;       ///< center, pixels, origin top-left
    double y = 0.0;
    double radius = 0.0;  ///< pixels, > 0
    std::set<std::string> lemmas;

    friend bool operator==(const Aoi&, const Aoi&) = default;
};

/// Immutable AOI inventory on a fixed canvas. Lemma sets are pairwise
/// disjoint, so every word maps to at most one AOI.
class AoiRegistry {
public:
    AoiRegistry() = default;
    /// Validates names, geometry and lemma disjointness.
    AoiRegistry(double canvas_w, double canvas_h, std::vector<Aoi> aois);

    double canvas_w() const { return canvas_w_; }
    double canvas_h() const { return canvas_h_; }
    const std::vector<Aoi>& aois() const { return aois_; }
    std::size_t size() const { return aois_.size(); }
    bool empty() const { return aois_.empty(); }

    /// The AOI whose lemma set contains `word`, or nullptr.
    const Aoi* lookup(std::string_view word) const;

    std::set<std::string> lemma_union() const;

    friend bool operator==(const AoiRegistry& a, const AoiRegistry& b) {
        return a.canvas_w_ == b.canvas_w_ && a.canvas_h_ == b.canvas_h_ && a.aois_ == b.aois_;
    }

private:
    double canvas_w_ = 0.0;
    double canvas_h_ = 0.0;
    std::vector<Aoi> aois_;
    std::map<std::string, std::size_t, std::less<>> index_;
};

/// Parses `canvas <w> <h>` followed by rows `name x y radius lemma1|lemma2|...`.
/// Fields are tab- or space-separated; `#` starts a comment line.
AoiRegistry load_registry(std::string_view text);

std::string serialize_registry(const AoiRegistry& registry);

inline const Aoi* lookup_word(const AoiRegistry& registry, std::string_view word) {
    return registry.lookup(word);
}

/// Intersects every lemma set with `train_vocab` and drops AOIs left empty.
/// Geometry and AOI order are preserved.
AoiRegistry filter_registry(const AoiRegistry& registry, const std::set<std::string>& train_vocab);

}  // namespace attnpath
