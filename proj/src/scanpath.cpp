#include "attnpath/scanpath.hpp"

#include "attnpath/text.hpp"

#include <algorithm>
#include <json.hpp>

namespace attnpath {

Scanpath build_scanpath(std::span<const WordToken> tokens, const AoiRegistry& registry, std::string session_id) {
    Scanpath path{std::move(session_id), {}};
    std::map<std::string, int, std::less<>> visits;
    double pause = 0.0;
    double prev_fixation_end = 0.0;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const WordToken& token = tokens[i];
        if (i > 0) pause += std::max(0.0, token.start_s - tokens[i - 1].end_s());
        const Aoi* aoi = registry.lookup(token.word);
        if (aoi == nullptr) continue;

        Fixation f;
        f.aoi_name = aoi->name;
        f.x = aoi->x;
        f.y = aoi->y;
        f.radius = aoi->radius;
        f.time_spent_s = token.duration_s;
        f.time_to_approach_s = token.start_s;
        f.visit_index = ++visits[aoi->name];
        // Tolerated sub-microsecond overlaps must not produce negative transitions.
        f.transition_time_s = std::max(0.0, token.start_s - prev_fixation_end);
        f.cumulative_pause_s = pause;
        prev_fixation_end = token.end_s();
        path.fixations.push_back(std::move(f));
    }
    return path;
}

std::map<std::string, int> visit_counts(const Scanpath& path) {
    std::map<std::string, int> counts;
    for (const auto& f : path.fixations) ++counts[f.aoi_name];
    return counts;
}

std::string scanpath_to_jsonl(const Scanpath& path) {
    std::string out;
    for (const auto& f : path.fixations) {
        out += "{\"aoi_name\":" + nlohmann::json(f.aoi_name).dump();
        out += ",\"x\":" + fixed(f.x);
        out += ",\"y\":" + fixed(f.y);
        out += ",\"radius\":" + fixed(f.radius);
        out += ",\"time_spent_s\":" + fixed(f.time_spent_s);
        out += ",\"time_to_approach_s\":" + fixed(f.time_to_approach_s);
        out += ",\"visit_index\":" + std::to_string(f.visit_index);
        out += ",\"transition_time_s\":" + fixed(f.transition_time_s);
        out += ",\"cumulative_pause_s\":" + fixed(f.cumulative_pause_s);
        out += "}\n";
    }
    return out;
}

}  // namespace attnpath
