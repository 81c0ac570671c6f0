#pragma once

#include "attnpath/aoi_registry.hpp"
#include "attnpath/transcript_io.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace attnpath {

/// A pseudo-fixation: one uttered word that names an AOI.
struct Fixation {
    std::string aoi_name;
    double x = 0.0;
    double y = 0.0;
    double radius = 0.0;
    double time_spent_s = 0.0;        ///< word duration
    double time_to_approach_s = 0.0;  ///< word start
    int visit_index = 1;              ///< running count of fixations on this AOI, from 1
    double transition_time_s = 0.0;   ///< start minus previous fixation end; recording start for the first
    double cumulative_pause_s = 0.0;  ///< positive inter-token gaps over all tokens so far

    friend bool operator==(const Fixation&, const Fixation&) = default;
};

struct Scanpath {
    std::string session_id;
    std::vector<Fixation> fixations;
};

/// One fixation per token the registry recognizes, in token order.
/// Pauses are measured over the full token stream, matched or not;
/// leading silence before the first token does not count.
Scanpath build_scanpath(std::span<const WordToken> tokens, const AoiRegistry& registry,
                        std::string session_id = {});

/// AOI name -> number of fixations on it.
std::map<std::string, int> visit_counts(const Scanpath& path);

/// One JSON object per fixation, fields in declaration order, 6-decimal reals.
std::string scanpath_to_jsonl(const Scanpath& path);

}  // namespace attnpath
