#include "sievekit/error.hpp"
#include "sievekit/model.hpp"
#include "sievekit/model_io.hpp"
#include "sievekit/synth.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <limits>
#include <sstream>

using namespace sievekit;

namespace {

LabeledDataset small_corpus()
{
    GeneratorSpec spec;
    spec.n_messages = 120;
    spec.spam_fraction = 0.4;
    spec.spam_tokens = {{"cash", 0.3}, {"free", 0.3}, {"meeting", 0.1}, {"winner", 0.3}};
    spec.legit_tokens = {{"agenda", 0.3}, {"meeting", 0.4}, {"free", 0.1}, {"lunch", 0.2}};
    spec.min_tokens = 3;
    spec.max_tokens = 8;
    spec.seed = 17;
    return generate(spec);
}

const ClassifierKind all_kinds[] = {ClassifierKind::NaiveBayes, ClassifierKind::Svm,
                                    ClassifierKind::TfIdf, ClassifierKind::Knn};

} // namespace

TEST_CASE("classifier kind names")
{
    for (auto kind : all_kinds)
        CHECK(parse_classifier_kind(to_string(kind)) == kind);
    CHECK_FALSE(parse_classifier_kind("bart").has_value());
}

TEST_CASE("train_model produces a working model for every classifier")
{
    const auto data = small_corpus();
    for (auto kind : all_kinds) {
        TrainOptions opts;
        opts.kind = kind;
        opts.features = 5;
        const auto model = train_model(data, opts);
        CHECK(model.kind() == kind);
        CHECK(model.features().size() == 5);
        std::size_t correct = 0;
        for (const auto& item : data)
            correct += model.classify(item.message).label == item.label;
        CHECK(static_cast<double>(correct) / data.size() > 0.8);
    }
}

TEST_CASE("classify thresholds are monotone (property)")
{
    const auto data = small_corpus();
    constexpr double inf = std::numeric_limits<double>::infinity();
    for (auto kind : all_kinds) {
        TrainOptions opts;
        opts.kind = kind;
        opts.features = 6;
        const auto model = train_model(data, opts);
        for (const auto& item : data) {
            CHECK(model.classify(item.message, inf).label == Label::Legitimate);
            CHECK(model.classify(item.message, -inf).label == Label::Spam);
            const auto native = model.classify(item.message);
            CHECK(native.label == label_for(native.score));
            bool was_legit = false;
            for (double t = -3.0; t <= 3.0; t += 0.25) {
                const bool legit = model.classify(item.message, t).label == Label::Legitimate;
                CHECK((!was_legit || legit));
                was_legit = legit;
            }
        }
    }
}

TEST_CASE("requesting more features than exist keeps what exists")
{
    static int warnings = 0;
    warnings = 0;
    auto previous = set_warning_handler([](const std::string&) { ++warnings; });
    TrainOptions opts;
    opts.features = 1000;
    const auto model = train_model(small_corpus(), opts);
    set_warning_handler(previous);
    CHECK(model.features().size() == 6);
    CHECK(warnings == 1);
}

TEST_CASE("train_model errors")
{
    std::vector<LabeledMessage> one_class{{parse_message("free cash", "spam/1"), Label::Spam},
                                          {parse_message("cash now", "spam/2"), Label::Spam}};
    CHECK_THROWS_AS(train_model(LabeledDataset(one_class), TrainOptions{}), TrainingError);

    std::vector<LabeledMessage> no_tokens{{parse_message("!", "spam/1"), Label::Spam},
                                          {parse_message("?", "ham/1"), Label::Legitimate}};
    CHECK_THROWS_AS(train_model(LabeledDataset(no_tokens), TrainOptions{}), TrainingError);

    TrainOptions knn;
    knn.kind = ClassifierKind::Knn;
    knn.hyper.k = 500;
    CHECK_THROWS_AS(train_model(small_corpus(), knn), TrainingError);
}

TEST_CASE("save and load reproduce scores bit for bit")
{
    const auto data = small_corpus();
    Rng rng(3);
    for (auto kind : all_kinds) {
        TrainOptions opts;
        opts.kind = kind;
        opts.features = 6;
        opts.hyper.seed = 99;
        opts.hyper.C = 0.3;
        const auto model = train_model(data, opts);
        std::stringstream buf;
        save_model(model, buf);
        const std::string text = buf.str();
        const auto loaded = load_model(buf);
        CHECK(loaded.kind() == kind);
        CHECK(loaded.features() == model.features());
        CHECK(loaded.hyper().C == 0.3);
        CHECK(loaded.hyper().seed == 99);

        std::stringstream again;
        save_model(loaded, again);
        CHECK(again.str() == text);

        for (int i = 0; i < 200; ++i) {
            TokenBag bag;
            for (std::uint64_t t = 0, n = rng.below(8); t < n; ++t)
                ++bag[model.features()[rng.below(model.features().size())]];
            CHECK(model.score(bag) == loaded.score(bag));
        }
    }
}

TEST_CASE("model file layout")
{
    TrainOptions opts;
    opts.features = 3;
    std::stringstream buf;
    save_model(train_model(small_corpus(), opts), buf);
    const auto text = buf.str();
    CHECK(text.rfind("[meta]\nformat=1\nkind=nb\nfields=subject,body\nd=3\n", 0) == 0);
    CHECK(text.find("\n[features]\n") != std::string::npos);
    CHECK(text.find("\n[params]\nn_spam=") != std::string::npos);
}

TEST_CASE("corrupt model files are rejected with a line number")
{
    TrainOptions opts;
    opts.features = 3;
    std::stringstream buf;
    save_model(train_model(small_corpus(), opts), buf);
    auto text = buf.str();

    auto expect_error = [](const std::string& s, const std::string& fragment) {
        std::istringstream in(s);
        try {
            load_model(in);
            FAIL("expected DataError");
        } catch (const DataError& e) {
            INFO(e.what());
            CHECK(std::string(e.what()).find(fragment) != std::string::npos);
        }
    };
    expect_error(std::string(text).replace(text.find("format=1"), 8, "format=9"), "line 2");
    expect_error(std::string(text).replace(text.find("kind=nb"), 7, "kind=xx"), "line 3");
    expect_error(std::string(text).replace(text.find("d=3"), 3, "d=4"), "line 5");
    expect_error("[meta]\nformat=1\n", "missing");
    expect_error("[bogus]\n", "unknown section");
    const auto sp = text.find("spam_present=");
    expect_error(text.substr(0, sp) + "spam_present=1 2\n" + text.substr(text.find('\n', sp) + 1),
                 "expected 3 values");
}
