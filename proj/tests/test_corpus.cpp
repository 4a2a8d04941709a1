#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "regkit/corpus.hpp"

using namespace regkit;

TEST_CASE("tokenize basics") {
    CHECK(tokenize("The firm shall report.") ==
          std::vector<std::string>{"the", "firm", "shall", "report"});
    CHECK(tokenize("").empty());
    CHECK(tokenize("Article 25(2) applies") ==
          std::vector<std::string>{"article", "25", "2", "applies"});
}

TEST_CASE("tokenize keeps section periods between digits") {
    CHECK(tokenize("17 CFR \xC2\xA7" "229.402") ==
          std::vector<std::string>{"17", "cfr", "229.402"});
    CHECK(tokenize("Art. 25") == std::vector<std::string>{"art", "25"});
    // A trailing period is never part of the token.
    CHECK(tokenize("see 229.") == std::vector<std::string>{"see", "229"});
}

TEST_CASE("tokenize_spans carries byte offsets") {
    const std::string text = "The firm";
    const auto spans = tokenize_spans(text);
    REQUIRE(spans.size() == 2);
    CHECK(spans[0].text == "the");
    CHECK(spans[0].begin == 0);
    CHECK(spans[0].end == 3);
    CHECK(spans[1].text == "firm");
    CHECK(text.substr(spans[1].begin, spans[1].end - spans[1].begin) == "firm");
}

TEST_CASE("split_sentences respects citation abbreviations and decimals") {
    const auto s = split_sentences(
        "The firm shall comply with Art. 25 of the directive. Ratios follow 229.402 rules. Done");
    REQUIRE(s.size() == 3);
    CHECK(s[0] == "The firm shall comply with Art. 25 of the directive.");
    CHECK(s[1] == "Ratios follow 229.402 rules.");
    CHECK(s[2] == "Done");
}

namespace {

Document doc_with_tokens(int n) {
    Document d;
    d.doc_id = "D";
    std::string text;
    for (int i = 0; i < n; ++i) {
        if (i) text += " ";
        text += "tok" + std::to_string(i);
    }
    d.provisions.push_back({"P1", text});
    return d;
}

}  // namespace

TEST_CASE("chunk_document window arithmetic") {
    CHECK(chunk_document(doc_with_tokens(10), 10, 0).size() == 1);

    const auto two = chunk_document(doc_with_tokens(15), 10, 5);
    REQUIRE(two.size() == 2);
    CHECK(two[0].token_count == 10);
    CHECK(two[1].token_count == 10);
    CHECK(tokenize(two[0].text)[0] == "tok0");
    CHECK(tokenize(two[1].text)[0] == "tok5");
    CHECK(tokenize(two[1].text)[9] == "tok14");

    Document empty;
    empty.doc_id = "D";
    empty.provisions.push_back({"P1", ""});
    CHECK(chunk_document(empty, 10, 0).empty());

    CHECK_THROWS_AS(chunk_document(doc_with_tokens(4), 5, 5), std::invalid_argument);
    CHECK_THROWS_AS(chunk_document(doc_with_tokens(4), 5, -1), std::invalid_argument);
}

TEST_CASE("chunk reconstruction property") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 200);
        const int max_tokens = 2 + static_cast<int>(rng() % 40);
        const int overlap = static_cast<int>(rng() % static_cast<unsigned>(max_tokens));
        const Document d = doc_with_tokens(n);
        const auto chunks = chunk_document(d, max_tokens, overlap);
        std::vector<std::string> rebuilt;
        for (std::size_t i = 0; i < chunks.size(); ++i) {
            auto toks = tokenize(chunks[i].text);
            const std::size_t skip = i == 0 ? 0 : static_cast<std::size_t>(overlap);
            rebuilt.insert(rebuilt.end(), toks.begin() + static_cast<long>(skip), toks.end());
            CHECK(chunks[i].token_count == static_cast<int>(toks.size()));
        }
        CHECK(rebuilt == tokenize(d.provisions[0].text));
    }
}

TEST_CASE("embed_text determinism and empty input") {
    EmbedderConfig cfg;
    const Embedding zero = embed_text("", cfg);
    CHECK(zero.norm == 0.0);

    const Embedding a = embed_text("the firm shall report thresholds", cfg);
    const Embedding b = embed_text("the firm shall report thresholds", cfg);
    CHECK(a.values == b.values);  // bitwise
    CHECK(a.norm == doctest::Approx(1.0));

    CHECK_THROWS_AS(embed_text("x", EmbedderConfig{4, 0, 1.0}), std::invalid_argument);
}

TEST_CASE("disjoint token sets give cosine zero when coordinates are disjoint") {
    EmbedderConfig cfg;
    const std::string text_a = "alpha bravo charlie";
    const std::string text_b = "delta echo foxtrot";
    std::set<std::size_t> coords_a, coords_b;
    for (const auto& t : tokenize(text_a)) {
        coords_a.insert(static_cast<std::size_t>(hash64(t, cfg.hash_seed) %
                                                 static_cast<std::uint64_t>(cfg.dim)));
    }
    for (const auto& t : tokenize(text_b)) {
        coords_b.insert(static_cast<std::size_t>(hash64(t, cfg.hash_seed) %
                                                 static_cast<std::uint64_t>(cfg.dim)));
    }
    std::set<std::size_t> overlap;
    for (auto c : coords_a)
        if (coords_b.count(c)) overlap.insert(c);
    REQUIRE(overlap.empty());  // verified precondition, not an assumption
    CHECK(cosine_sim(embed_text(text_a, cfg), embed_text(text_b, cfg)) == 0.0);
}

TEST_CASE("cosine_sim contract") {
    EmbedderConfig cfg;
    const Embedding v = embed_text("liquidity coverage ratio", cfg);
    CHECK(cosine_sim(v, v) == doctest::Approx(1.0));

    const Embedding zero = embed_text("", cfg);
    CHECK(cosine_sim(v, zero) == 0.0);

    Embedding a = Embedding::of({1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0});
    Embedding b = Embedding::of({0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0});
    CHECK(cosine_sim(a, b) == 0.0);

    Embedding small = Embedding::of({1.0, 0.0});
    CHECK_THROWS_AS(cosine_sim(v, small), std::invalid_argument);
}

TEST_CASE("cosine symmetry and bounds over random text pairs") {
    EmbedderConfig cfg;
    std::mt19937 rng(11);
    const std::vector<std::string> words = {"margin", "liquidity", "report", "firm",
                                            "threshold", "capital", "exposure", "risk"};
    for (int trial = 0; trial < 100; ++trial) {
        std::string ta, tb;
        for (unsigned i = 0; i < 1 + rng() % 10; ++i) ta += words[rng() % words.size()] + " ";
        for (unsigned i = 0; i < 1 + rng() % 10; ++i) tb += words[rng() % words.size()] + " ";
        const Embedding a = embed_text(ta, cfg);
        const Embedding b = embed_text(tb, cfg);
        const double ab = cosine_sim(a, b);
        CHECK(ab == cosine_sim(b, a));
        CHECK(ab >= -1.0);
        CHECK(ab <= 1.0);
    }
}

TEST_CASE("embedding weight uses the configured smoothing constant") {
    EmbedderConfig one{256, 0, 1.0};
    EmbedderConfig ten{256, 0, 10.0};
    const Embedding a = embed_text("margin", one);
    const Embedding b = embed_text("margin", ten);
    // Single token: both normalize to a unit spike on the same coordinate.
    CHECK(cosine_sim(a, b) == doctest::Approx(1.0));
    // Two tokens with different tf: the ratio differs between configs.
    const Embedding c = embed_text("margin margin exposure", one);
    const Embedding d = embed_text("margin margin exposure", ten);
    CHECK(cosine_sim(c, d) < 1.0);
}
