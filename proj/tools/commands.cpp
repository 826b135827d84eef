#include "commands.hpp"

#include "sievekit/corpus.hpp"
#include "sievekit/error.hpp"
#include "sievekit/experiment.hpp"
#include "sievekit/format.hpp"
#include "sievekit/metrics.hpp"
#include "sievekit/model.hpp"
#include "sievekit/model_io.hpp"
#include "sievekit/synth.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>

namespace sievekit::cli {

namespace fs = std::filesystem;

namespace {

struct HyperFlags {
    double alpha = 1.0;
    double C = 1.0;
    std::uint32_t epochs = 20;
    std::uint32_t k = 5;
    double vote_exponent = 1.0;
    std::string fields = "subject,body";

    void attach(CLI::App& cmd)
    {
        cmd.add_option("--alpha", alpha, "Naive Bayes Laplace smoothing")->capture_default_str();
        cmd.add_option("--C", C, "SVM cost parameter")->capture_default_str();
        cmd.add_option("--epochs", epochs, "SVM passes over the training data")->capture_default_str();
        cmd.add_option("--k", k, "k-NN neighbour count")->capture_default_str();
        cmd.add_option("--vote-exponent", vote_exponent, "k-NN vote weight 1/distance^n")
            ->capture_default_str();
        cmd.add_option("--fields", fields, "token sources: subject,body")->capture_default_str();
    }

    Hyperparameters hyper(std::uint64_t seed) const
    {
        return {alpha, C, epochs, k, vote_exponent, seed};
    }
};

std::vector<double> parse_lambdas(const std::string& text)
{
    std::vector<double> out;
    for (const auto& part : split_list(text)) {
        try {
            out.push_back(parse_real(part));
        } catch (const DataError&) {
            throw UsageError("bad lambda value '" + part + "'");
        }
    }
    return out.empty() ? default_lambdas() : out;
}

template <typename T>
std::vector<T> parse_sizes(const std::string& text, const char* what)
{
    std::vector<T> out;
    for (const auto& part : split_list(text)) {
        try {
            out.push_back(static_cast<T>(parse_unsigned(part)));
        } catch (const DataError&) {
            throw UsageError(std::string("bad ") + what + " value '" + part + "'");
        }
    }
    return out;
}

ClassifierKind parse_kind(const std::string& text)
{
    auto kind = parse_classifier_kind(text);
    if (!kind)
        throw UsageError("unknown classifier '" + text + "' (expected nb, svm, knn, tfidf)");
    return *kind;
}

std::ofstream open_output(const fs::path& path)
{
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw DataError("cannot open output file " + path.string());
    return out;
}

std::string read_all(std::istream& in)
{
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Statistical spam filtering toolkit", "sievekit"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    auto add_seed = [&](CLI::App* cmd) {
        cmd->add_option("--seed", seed, "random seed")->envname("SIEVEKIT_SEED")->capture_default_str();
    };

    // train
    auto* train = app.add_subcommand("train", "Train a classifier on a whole corpus");
    std::string corpus, model_path, classifier = "nb", out_path;
    std::size_t features = 50;
    HyperFlags hf;
    train->add_option("--corpus", corpus, "corpus root with spam/ and ham/")->required();
    train->add_option("--model", model_path, "model file to write")->required();
    train->add_option("--classifier", classifier, "nb, svm, knn or tfidf")->capture_default_str();
    train->add_option("--features", features, "number of selected features")->capture_default_str();
    hf.attach(*train);
    add_seed(train);

    // classify
    auto* classify = app.add_subcommand("classify", "Classify one message");
    std::string message_path = "-";
    double threshold = 0.0;
    classify->add_option("--model", model_path, "model file")->required();
    classify->add_option("message", message_path, "message file, or - for standard input");
    classify->add_option("--threshold", threshold, "spam iff score > threshold")->capture_default_str();

    // evaluate
    auto* evaluate_cmd = app.add_subcommand("evaluate", "Evaluate a model on a labeled corpus");
    std::string lambdas = "1,9,999";
    evaluate_cmd->add_option("--model", model_path, "model file")->required();
    evaluate_cmd->add_option("--corpus", corpus, "test corpus root")->required();
    evaluate_cmd->add_option("--lambda", lambdas, "cost weights")->capture_default_str();
    evaluate_cmd->add_option("--out", out_path, "directory for metrics.csv and roc.csv");

    // roc
    auto* roc = app.add_subcommand("roc", "ROC curve of a model on a labeled corpus");
    roc->add_option("--model", model_path, "model file")->required();
    roc->add_option("--corpus", corpus, "test corpus root")->required();
    roc->add_option("--out", out_path, "CSV file (default: standard output)");

    // generate
    auto* generate_cmd = app.add_subcommand("generate", "Write a synthetic corpus");
    std::string spec_path;
    generate_cmd->add_option("--spec", spec_path, "generator spec (key=value)")->required();
    generate_cmd->add_option("--out", out_path, "corpus root to create")->required();
    auto* gen_seed = generate_cmd->add_option("--seed", seed, "override the spec's seed")
                         ->envname("SIEVEKIT_SEED");

    // experiment
    auto* experiment = app.add_subcommand("experiment", "Data-size / feature-count sweep");
    std::string classifiers = "nb,svm,knn,tfidf", sizes = "1500,3000,4500,6000,8000",
                feature_list = "10,25,45,50";
    double train_fraction = 0.7;
    HyperFlags xf;
    experiment->add_option("--corpus", corpus, "corpus root")->required();
    experiment->add_option("--classifier", classifiers, "comma-separated classifiers")
        ->capture_default_str();
    experiment->add_option("--sizes", sizes, "comma-separated data sizes")->capture_default_str();
    experiment->add_option("--features", feature_list, "comma-separated feature counts")
        ->capture_default_str();
    experiment->add_option("--lambda", lambdas, "cost weights")->capture_default_str();
    experiment->add_option("--train-fraction", train_fraction, "train share of each sample")
        ->capture_default_str();
    experiment->add_option("--out", out_path, "sweep CSV (default: standard output)");
    xf.attach(*experiment);
    add_seed(experiment);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? exit_ok : exit_usage;
    }

    try {
        if (train->parsed()) {
            TrainOptions opts;
            opts.kind = parse_kind(classifier);
            opts.features = features;
            opts.fields = parse_token_fields(hf.fields);
            opts.hyper = hf.hyper(seed);
            const auto data = load_dataset(corpus);
            const auto model = train_model(data, opts);
            save_model(model, fs::path(model_path));
            out << "trained " << to_string(model.kind()) << ": d=" << model.features().size()
                << " training_size=" << data.size() << " (spam " << data.spam_count()
                << ", legitimate " << data.legit_count() << ") -> " << model_path << '\n';
        } else if (classify->parsed()) {
            const auto model = load_model(fs::path(model_path));
            std::string raw;
            if (message_path == "-") {
                raw = read_all(in);
            } else {
                std::ifstream file(message_path, std::ios::binary);
                if (!file)
                    throw DataError("cannot read message file " + message_path);
                raw = read_all(file);
            }
            const auto verdict = model.classify(parse_message(raw, message_path), threshold);
            out << to_string(verdict.label) << '\t' << format_real(verdict.score) << '\n';
        } else if (evaluate_cmd->parsed()) {
            const auto lambda_values = parse_lambdas(lambdas);
            const auto model = load_model(fs::path(model_path));
            const auto data = load_dataset(corpus);
            const auto ev = sievekit::evaluate(model, data);
            const auto report = make_report(ev.counts, lambda_values);
            write_metrics_table(report, out);
            if (!out_path.empty()) {
                auto metrics = open_output(fs::path(out_path) / "metrics.csv");
                write_metrics_csv(report, metrics);
                auto roc_file = open_output(fs::path(out_path) / "roc.csv");
                write_roc_csv(roc_curve(ev.scores, ev.truths), roc_file);
            } else {
                out << '\n';
                write_metrics_csv(report, out);
            }
        } else if (roc->parsed()) {
            const auto model = load_model(fs::path(model_path));
            const auto ev = sievekit::evaluate(model, load_dataset(corpus));
            const auto curve = roc_curve(ev.scores, ev.truths);
            if (out_path.empty()) {
                write_roc_csv(curve, out);
            } else {
                auto file = open_output(out_path);
                write_roc_csv(curve, file);
            }
        } else if (generate_cmd->parsed()) {
            auto spec = load_generator_spec(spec_path);
            if (gen_seed->count() > 0 || std::getenv("SIEVEKIT_SEED"))
                spec.seed = seed;
            const auto data = sievekit::generate(spec);
            write_dataset(data, out_path);
            out << "generated " << data.size() << " messages (spam " << data.spam_count()
                << ", legitimate " << data.legit_count() << ") in " << out_path << '\n';
        } else if (experiment->parsed()) {
            ExperimentPlan plan;
            for (const auto& name : split_list(classifiers))
                plan.classifiers.push_back(parse_kind(name));
            plan.data_sizes = parse_sizes<std::size_t>(sizes, "data size");
            plan.feature_counts = parse_sizes<std::size_t>(feature_list, "feature count");
            plan.lambdas = parse_lambdas(lambdas);
            plan.train_fraction = train_fraction;
            plan.seed = seed;
            plan.fields = parse_token_fields(xf.fields);
            plan.hyper = xf.hyper(seed);
            const auto data = load_dataset(corpus);
            const auto rows = run_experiment(plan, data);
            if (out_path.empty()) {
                write_sweep_csv(rows, plan.lambdas, out);
            } else {
                auto file = open_output(out_path);
                write_sweep_csv(rows, plan.lambdas, file);
            }
        }
    } catch (const UsageError& e) {
        err << "sievekit: usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const TrainingError& e) {
        err << "sievekit: training failed: " << e.what() << '\n';
        return exit_training;
    } catch (const std::exception& e) {
        err << "sievekit: error: " << e.what() << '\n';
        return exit_data;
    }
    return exit_ok;
}

} // namespace sievekit::cli
