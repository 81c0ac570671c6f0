#include "attnpath/aoi_registry.hpp"
#include "attnpath/errors.hpp"
#include "attnpath/rng.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <algorithm>

using namespace attnpath;

TEST_CASE("load_registry three-AOI fixture") {
    const auto reg = test::registry3();
    CHECK(reg.canvas_w() == 750);
    CHECK(reg.canvas_h() == 575);
    REQUIRE(reg.size() == 3);
    CHECK(reg.aois()[0].name == "boy");
    CHECK(reg.aois()[1].lemmas == std::set<std::string>{"fall", "falling", "fell"});
    CHECK(reg.aois()[2].lemmas == std::set<std::string>{"water", "tap", "faucet"});
}

TEST_CASE("load_registry errors") {
    CHECK_THROWS_WITH_AS(load_registry("canvas 100 100\na 10 10 5 water\nb 20 20 5 tap|water\n"),
                         doctest::Contains("'a' and 'b'"), ValidationError);
    CHECK_THROWS_AS(load_registry("canvas 100 100\na 10 10 0 water\n"), ParseError);
    CHECK_THROWS_AS(load_registry("canvas 100 100\na 10 10 -3 water\n"), ParseError);
    CHECK_THROWS_AS(load_registry("canvas 100 100\na 10 200 5 water\n"), ValidationError);
    CHECK_THROWS_AS(load_registry("canvas 100 100\na 10 10 5 water\na 20 20 5 tap\n"), ValidationError);
    CHECK_THROWS_AS(load_registry("a 10 10 5 water\n"), ParseError);
    CHECK_THROWS_AS(load_registry("# nothing\n"), ValidationError);
    CHECK_THROWS_AS(load_registry("canvas 100 100\na 10 10 5\n"), ParseError);
}

TEST_CASE("lemmas are normalized like transcript words") {
    const auto reg = load_registry("canvas 100 100\nmother 50 50 10 Woman|LADY|Mother's|mommy\n");
    CHECK(reg.lookup("lady") != nullptr);
    CHECK(reg.lookup("mother's") != nullptr);
    CHECK(reg.lookup("woman")->name == "mother");
}

TEST_CASE("lookup_word") {
    const auto reg = test::registry3();
    REQUIRE(lookup_word(reg, "falling") != nullptr);
    CHECK(lookup_word(reg, "falling")->name == "fall");
    CHECK(lookup_word(reg, "the") == nullptr);
    CHECK(lookup_word(reg, "faucet")->name == "water");
}

TEST_CASE("default registry groups synonyms and covers the transcript examples") {
    const auto reg = test::default_registry();
    CHECK(reg.canvas_w() == 750);
    CHECK(reg.canvas_h() == 575);
    CHECK(reg.size() >= 15);
    for (const char* w : {"woman", "lady", "mother", "mommy"}) CHECK(reg.lookup(w)->name == "mother");
    CHECK(reg.lookup("falling")->name == "fall");
    CHECK(reg.lookup("chair")->name == "stool");
    CHECK(reg.aois()[reg.size() - 2].name == "window");
    CHECK(reg.aois()[reg.size() - 1].name == "outside");
}

TEST_CASE("filter_registry examples") {
    const auto reg = test::registry3();
    CHECK(filter_registry(reg, reg.lemma_union()) == reg);
    CHECK(filter_registry(reg, {}).empty());

    const auto two = filter_registry(reg, {"boy", "water"});
    REQUIRE(two.size() == 2);
    CHECK(two.aois()[0].name == "boy");
    CHECK(two.aois()[0].lemmas == std::set<std::string>{"boy"});
    CHECK(two.aois()[1].name == "water");
    CHECK(two.aois()[1].x == 430);
    CHECK(two.aois()[1].radius == 40);
    CHECK(two.lookup("falling") == nullptr);
    CHECK(two.lookup("tap") == nullptr);
}

TEST_CASE("filter_registry properties over random vocabularies") {
    const auto reg = test::default_registry();
    const auto all = reg.lemma_union();
    const std::vector<std::string> lemmas(all.begin(), all.end());
    SplitMix64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        std::set<std::string> vocab;
        const double p = rng.uniform();
        for (const auto& l : lemmas) {
            if (rng.bernoulli(p)) vocab.insert(l);
        }
        for (int j = 0; j < 5; ++j) vocab.insert("noise" + std::to_string(rng.below(100)));

        const auto once = filter_registry(reg, vocab);
        const auto kept = once.lemma_union();
        CHECK(std::includes(vocab.begin(), vocab.end(), kept.begin(), kept.end()));
        CHECK(std::includes(all.begin(), all.end(), kept.begin(), kept.end()));
        CHECK(filter_registry(once, vocab) == once);
        for (const auto& l : lemmas) {
            const Aoi* hit = once.lookup(l);
            CHECK((hit != nullptr) == kept.contains(l));
            if (hit) CHECK(hit->name == reg.lookup(l)->name);
        }
    }
}
