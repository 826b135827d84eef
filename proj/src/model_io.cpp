#include "sievekit/model_io.hpp"

#include "sievekit/error.hpp"
#include "sievekit/format.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace sievekit {

namespace {

template <typename T, typename Fmt>
std::string join(const std::vector<T>& values, Fmt fmt)
{
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i)
            out.push_back(' ');
        out += fmt(values[i]);
    }
    return out;
}

std::string join_reals(const std::vector<double>& v)
{
    return join(v, [](double x) { return format_real(x); });
}

std::string join_counts(const std::vector<std::uint32_t>& v)
{
    return join(v, [](std::uint32_t x) { return std::to_string(x); });
}

void write_params(const ModelParams& params, std::ostream& out)
{
    struct Writer {
        std::ostream& out;
        void operator()(const NaiveBayesModel& m) const
        {
            out << "n_spam=" << m.class_size(Label::Spam) << '\n'
                << "n_legit=" << m.class_size(Label::Legitimate) << '\n'
                << "spam_present=" << join_counts(m.present_counts(Label::Spam)) << '\n'
                << "legit_present=" << join_counts(m.present_counts(Label::Legitimate)) << '\n';
        }
        void operator()(const SvmModel& m) const
        {
            out << "bias=" << format_real(m.bias) << '\n'
                << "weights=" << join_reals(m.weights) << '\n';
        }
        void operator()(const TfIdfModel& m) const
        {
            out << "idf=" << join_reals(m.idf) << '\n'
                << "spam_centroid=" << join_reals(m.spam_centroid) << '\n'
                << "legit_centroid=" << join_reals(m.legit_centroid) << '\n';
        }
        void operator()(const KnnModel& m) const
        {
            out << "feature_weights=" << join_reals(m.feature_weights()) << '\n';
            for (const auto& ex : m.training()) {
                out << "example=" << (ex.y == Label::Spam ? "spam" : "legitimate");
                for (auto j : ex.x)
                    out << ' ' << j;
                out << '\n';
            }
        }
    };
    std::visit(Writer{out}, params);
}

} // namespace

void save_model(const TrainedModel& model, std::ostream& out)
{
    const auto& hp = model.hyper();
    out << "[meta]\n"
        << "format=" << model_format_version << '\n'
        << "kind=" << to_string(model.kind()) << '\n'
        << "fields=" << to_string(model.fields()) << '\n'
        << "d=" << model.features().size() << '\n'
        << "seed=" << hp.seed << '\n'
        << "alpha=" << format_real(hp.alpha) << '\n'
        << "C=" << format_real(hp.C) << '\n'
        << "epochs=" << hp.epochs << '\n'
        << "k=" << hp.k << '\n'
        << "vote_exponent=" << format_real(hp.vote_exponent) << '\n';
    out << "[features]\n";
    for (const auto& token : model.features().tokens())
        out << token << '\n';
    out << "[params]\n";
    write_params(model.params(), out);
}

void save_model(const TrainedModel& model, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw DataError("cannot open model file for writing: " + path.string());
    save_model(model, out);
    out.flush();
    if (!out)
        throw DataError("error writing model file " + path.string());
}

namespace {

struct Entry {
    std::string value;
    std::size_t line;
};

class ModelReader {
public:
    explicit ModelReader(std::istream& in) { read(in); }

    const Entry& meta(const std::string& key) const { return require(meta_, key, "[meta]"); }
    const Entry& param(const std::string& key) const { return require(params_, key, "[params]"); }
    const std::vector<std::string>& features() const { return features_; }
    const std::vector<Entry>& examples() const { return examples_; }

    [[noreturn]] static void fail(std::size_t line, const std::string& what)
    {
        throw DataError("model line " + std::to_string(line) + ": " + what);
    }

private:
    void read(std::istream& in)
    {
        std::string raw;
        std::string section;
        std::size_t line_no = 0;
        while (std::getline(in, raw)) {
            ++line_no;
            auto line = trim(raw);
            if (line.empty())
                continue;
            if (line.front() == '[') {
                section = std::string(line);
                if (section != "[meta]" && section != "[features]" && section != "[params]")
                    fail(line_no, "unknown section " + section);
                continue;
            }
            if (section == "[features]") {
                features_.emplace_back(line);
                feature_lines_.push_back(line_no);
                continue;
            }
            const auto eq = line.find('=');
            if (section.empty() || eq == std::string_view::npos)
                fail(line_no, "expected key=value inside a section");
            std::string key(trim(line.substr(0, eq)));
            Entry entry{std::string(trim(line.substr(eq + 1))), line_no};
            if (section == "[params]" && key == "example") {
                examples_.push_back(std::move(entry));
                continue;
            }
            auto& table = section == "[meta]" ? meta_ : params_;
            if (!table.emplace(key, std::move(entry)).second)
                fail(line_no, "duplicate key '" + key + "'");
        }
        if (in.bad())
            throw DataError("error reading model file");
    }

    static const Entry& require(const std::map<std::string, Entry>& table, const std::string& key,
                                const char* section)
    {
        auto it = table.find(key);
        if (it == table.end())
            throw DataError(std::string("model file: missing '") + key + "' in " + section);
        return it->second;
    }

    std::map<std::string, Entry> meta_;
    std::map<std::string, Entry> params_;
    std::vector<std::string> features_;
    std::vector<std::size_t> feature_lines_;
    std::vector<Entry> examples_;
};

template <typename F>
auto parse_at(const Entry& e, F parse)
{
    try {
        return parse(e.value);
    } catch (const DataError& err) {
        ModelReader::fail(e.line, err.what());
    }
}

double real_at(const Entry& e)
{
    return parse_at(e, [](const std::string& s) { return parse_real(s); });
}

unsigned long long uint_at(const Entry& e)
{
    return parse_at(e, [](const std::string& s) { return parse_unsigned(s); });
}

std::vector<double> reals_at(const Entry& e, std::size_t expected)
{
    std::vector<double> out;
    std::istringstream in(e.value);
    for (std::string tok; in >> tok;)
        out.push_back(parse_at(Entry{tok, e.line}, [](const std::string& s) { return parse_real(s); }));
    if (out.size() != expected)
        ModelReader::fail(e.line, "expected " + std::to_string(expected) + " values, got " +
                                      std::to_string(out.size()));
    return out;
}

std::vector<std::uint32_t> counts_at(const Entry& e, std::size_t expected)
{
    std::vector<std::uint32_t> out;
    std::istringstream in(e.value);
    for (std::string tok; in >> tok;)
        out.push_back(static_cast<std::uint32_t>(uint_at(Entry{tok, e.line})));
    if (out.size() != expected)
        ModelReader::fail(e.line, "expected " + std::to_string(expected) + " values, got " +
                                      std::to_string(out.size()));
    return out;
}

Example example_at(const Entry& e, std::size_t d)
{
    std::istringstream in(e.value);
    std::string label_text;
    in >> label_text;
    auto label = parse_label(label_text);
    if (!label)
        ModelReader::fail(e.line, "bad example label '" + label_text + "'");
    std::vector<std::uint32_t> idx;
    for (std::string tok; in >> tok;) {
        auto j = uint_at(Entry{tok, e.line});
        if (j >= d)
            ModelReader::fail(e.line, "feature index " + tok + " out of range");
        idx.push_back(static_cast<std::uint32_t>(j));
    }
    return {FeatureVector(std::move(idx)), *label};
}

} // namespace

TrainedModel load_model(std::istream& in)
{
    ModelReader r(in);

    const auto& version = r.meta("format");
    if (uint_at(version) != model_format_version)
        ModelReader::fail(version.line, "unsupported model format version " + version.value);
    const auto& kind_entry = r.meta("kind");
    const auto kind = parse_classifier_kind(kind_entry.value);
    if (!kind)
        ModelReader::fail(kind_entry.line, "unknown classifier kind '" + kind_entry.value + "'");
    const auto& fields_entry = r.meta("fields");
    TokenFields fields;
    try {
        fields = parse_token_fields(fields_entry.value);
    } catch (const Error& e) {
        ModelReader::fail(fields_entry.line, e.what());
    }

    Hyperparameters hp;
    hp.seed = uint_at(r.meta("seed"));
    hp.alpha = real_at(r.meta("alpha"));
    hp.C = real_at(r.meta("C"));
    hp.epochs = static_cast<std::uint32_t>(uint_at(r.meta("epochs")));
    hp.k = static_cast<std::uint32_t>(uint_at(r.meta("k")));
    hp.vote_exponent = real_at(r.meta("vote_exponent"));

    const auto& d_entry = r.meta("d");
    const std::size_t d = uint_at(d_entry);
    if (r.features().size() != d)
        ModelReader::fail(d_entry.line, "d=" + d_entry.value + " but [features] lists " +
                                            std::to_string(r.features().size()) + " tokens");
    FeatureSet features(r.features());

    auto build = [&]() -> ModelParams {
        switch (*kind) {
        case ClassifierKind::NaiveBayes:
            return NaiveBayesModel(static_cast<std::uint32_t>(uint_at(r.param("n_spam"))),
                                   static_cast<std::uint32_t>(uint_at(r.param("n_legit"))),
                                   counts_at(r.param("spam_present"), d),
                                   counts_at(r.param("legit_present"), d), hp.alpha);
        case ClassifierKind::Svm: {
            SvmModel m;
            m.bias = real_at(r.param("bias"));
            m.weights = reals_at(r.param("weights"), d);
            return m;
        }
        case ClassifierKind::TfIdf: {
            TfIdfModel m;
            m.idf = reals_at(r.param("idf"), d);
            m.spam_centroid = reals_at(r.param("spam_centroid"), d);
            m.legit_centroid = reals_at(r.param("legit_centroid"), d);
            return m;
        }
        case ClassifierKind::Knn: {
            std::vector<Example> training;
            training.reserve(r.examples().size());
            for (const auto& e : r.examples())
                training.push_back(example_at(e, d));
            return KnnModel(std::move(training), d, KnnParams{hp.k, hp.vote_exponent},
                            reals_at(r.param("feature_weights"), d));
        }
        }
        throw DataError("unknown classifier kind");
    };
    try {
        return TrainedModel(build(), std::move(features), fields, hp);
    } catch (const DataError&) {
        throw;
    } catch (const Error& e) {
        throw DataError(std::string("invalid model parameters: ") + e.what());
    }
}

TrainedModel load_model(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError("cannot open model file " + path.string());
    try {
        return load_model(in);
    } catch (const DataError& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

} // namespace sievekit
