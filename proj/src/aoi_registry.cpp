#include "attnpath/aoi_registry.hpp"

#include "attnpath/errors.hpp"
#include "attnpath/text.hpp"

#include <algorithm>

namespace attnpath {

AoiRegistry::AoiRegistry(double canvas_w, double canvas_h, std::vector<Aoi> aois)
    : canvas_w_(canvas_w), canvas_h_(canvas_h), aois_(std::move(aois)) {
    if (!(canvas_w_ > 0.0) || !(canvas_h_ > 0.0)) throw ValidationError("registry: canvas must be positive");
    std::set<std::string, std::less<>> names;
    for (std::size_t i = 0; i < aois_.size(); ++i) {
        const Aoi& aoi = aois_[i];
        if (aoi.name.empty()) throw ValidationError("registry: AOI with empty name");
        if (!names.insert(aoi.name).second) throw ValidationError("registry: duplicate AOI name '" + aoi.name + "'");
        if (!(aoi.radius > 0.0)) throw ValidationError("registry: AOI '" + aoi.name + "' has radius <= 0");
        if (aoi.x < 0.0 || aoi.x > canvas_w_ || aoi.y < 0.0 || aoi.y > canvas_h_) {
            throw ValidationError("registry: AOI '" + aoi.name + "' center lies outside the canvas");
        }
        if (aoi.lemmas.empty()) throw ValidationError("registry: AOI '" + aoi.name + "' has no lemmas");
        for (const auto& lemma : aoi.lemmas) {
            auto [it, inserted] = index_.emplace(lemma, i);
            if (!inserted) {
                throw ValidationError("registry: lemma '" + lemma + "' is claimed by both '" +
                                      aois_[it->second].name + "' and '" + aoi.name + "'");
            }
        }
    }
}

const Aoi* AoiRegistry::lookup(std::string_view word) const {
    auto it = index_.find(word);
    return it == index_.end() ? nullptr : &aois_[it->second];
}

std::set<std::string> AoiRegistry::lemma_union() const {
    std::set<std::string> out;
    for (const auto& [lemma, _] : index_) out.insert(lemma);
    return out;
}

AoiRegistry load_registry(std::string_view text) {
    const auto lines = split_lines(text);
    bool have_canvas = false;
    double w = 0.0, h = 0.0;
    std::vector<Aoi> aois;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t lineno = i + 1;
        const auto fields = split_whitespace(lines[i]);
        if (fields.empty() || fields.front().front() == '#') continue;
        if (!have_canvas) {
            if (fields.size() != 3 || fields[0] != "canvas" || !parse_double(fields[1], w) ||
                !parse_double(fields[2], h)) {
                throw ParseError(lineno, "expected header 'canvas <w> <h>'");
            }
            have_canvas = true;
            continue;
        }
        if (fields.size() != 5) throw ParseError(lineno, "expected 'name x y radius lemmas'");
        Aoi aoi;
        aoi.name = std::string(fields[0]);
        if (!parse_double(fields[1], aoi.x) || !parse_double(fields[2], aoi.y) ||
            !parse_double(fields[3], aoi.radius)) {
            throw ParseError(lineno, "non-numeric geometry");
        }
        if (!(aoi.radius > 0.0)) throw ParseError(lineno, "radius must be positive");
        std::string_view rest = fields[4];
        while (!rest.empty()) {
            const auto bar = rest.find('|');
            const auto piece = rest.substr(0, bar);
            std::string lemma = normalize_word(piece);
            if (lemma.empty()) throw ParseError(lineno, "empty lemma");
            aoi.lemmas.insert(std::move(lemma));
            if (bar == std::string_view::npos) break;
            rest.remove_prefix(bar + 1);
        }
        aois.push_back(std::move(aoi));
    }
    if (!have_canvas) throw ValidationError("registry: missing 'canvas <w> <h>' header");
    return AoiRegistry(w, h, std::move(aois));
}

std::string serialize_registry(const AoiRegistry& registry) {
    std::string out = "canvas\t" + shortest(registry.canvas_w()) + '\t' + shortest(registry.canvas_h()) + '\n';
    for (const auto& aoi : registry.aois()) {
        out += aoi.name + '\t' + shortest(aoi.x) + '\t' + shortest(aoi.y) + '\t' + shortest(aoi.radius) + '\t';
        bool first = true;
        for (const auto& lemma : aoi.lemmas) {
            if (!first) out += '|';
            out += lemma;
            first = false;
        }
        out += '\n';
    }
    return out;
}

AoiRegistry filter_registry(const AoiRegistry& registry, const std::set<std::string>& train_vocab) {
    std::vector<Aoi> kept;
    for (const auto& aoi : registry.aois()) {
        Aoi filtered = aoi;
        filtered.lemmas.clear();
        std::set_intersection(aoi.lemmas.begin(), aoi.lemmas.end(), train_vocab.begin(), train_vocab.end(),
                              std::inserter(filtered.lemmas, filtered.lemmas.end()));
        if (!filtered.lemmas.empty()) kept.push_back(std::move(filtered));
    }
    return AoiRegistry(registry.canvas_w(), registry.canvas_h(), std::move(kept));
}

}  // namespace attnpath
