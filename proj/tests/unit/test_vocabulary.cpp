#include <doctest.h>

#include <filesystem>

#include "phasor/errors.hpp"
#include "phasor/vocabulary.hpp"

using namespace phasor;

TEST_CASE("vocabulary keeps insertion order and unique names")
{
    Vocabulary v(3);
    v.add("x", PhasorVector{0.1, 0.2, 0.3});
    v.add("y", PhasorVector{1.0, 2.0, 3.0});
    CHECK(v.size() == 2);
    CHECK(v[1].name == "y");
    CHECK(v.contains("x"));
    CHECK(v.find("z") == nullptr);
    CHECK_THROWS_AS(v.add("x", PhasorVector{0.0, 0.0, 0.0}), ValidationError);
    CHECK_THROWS_AS(v.add("w", PhasorVector{0.0, 0.0}), DimensionMismatch);
    CHECK_THROWS_AS(v.add("", PhasorVector{0.0, 0.0, 0.0}), ValidationError);
    CHECK_THROWS_AS((void)v.at("z"), ValidationError);
}

TEST_CASE("seeded vocabularies are reproducible and per-name independent")
{
    const auto a = Vocabulary::random(64, 5, {"A", "B"});
    const auto b = Vocabulary::random(64, 5, {"B", "A"});
    CHECK(a.at("A") == b.at("A"));
    CHECK(a.at("A") != a.at("B"));
    CHECK(derive_seed(5, "A") != derive_seed(6, "A"));
    CHECK(derive_seed(5, "A") == derive_seed(5, "A"));
}

TEST_CASE("vocabulary JSON round-trips phases exactly")
{
    const auto v = Vocabulary::random(32, 17, {"alpha", "beta", "gamma"});
    const auto back = vocabulary_from_json(vocabulary_to_json(v));
    REQUIRE(back.size() == 3);
    CHECK(back.dim() == 32);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(back[i].name == v[i].name);
        CHECK(back[i].vector == v[i].vector);
    }
    const auto path = std::filesystem::temp_directory_path() / "phasor_vocab_test.json";
    save_vocabulary(v, path);
    CHECK(load_vocabulary(path).at("beta") == v.at("beta"));
    std::filesystem::remove(path);
}

TEST_CASE("malformed vocabulary documents are rejected")
{
    CHECK_THROWS_AS(vocabulary_from_json("{"), ValidationError);
    CHECK_THROWS_AS(vocabulary_from_json(R"({"dim": 2, "entries": [{"name": "a", "phases": [0.0]}]})"),
            Error);
    CHECK_THROWS_AS(load_vocabulary("/nonexistent/vocab.json"), ValidationError);
}
