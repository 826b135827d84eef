#include "sievekit/synth.hpp"

#include "sievekit/error.hpp"
#include "sievekit/features.hpp"
#include "sievekit/format.hpp"
#include "sievekit/random.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

namespace sievekit {

namespace {

void validate_distribution(const std::map<std::string, double>& dist, const char* which)
{
    if (dist.empty())
        throw ConfigError(std::string(which) + " token distribution is empty");
    double sum = 0.0;
    for (const auto& [token, p] : dist) {
        if (!is_valid_token(token))
            throw ConfigError(std::string(which) + " token '" + token +
                              "' is not a tokenizer token ([a-z0-9], 2-40 chars)");
        if (!(p >= 0.0) || !std::isfinite(p))
            throw ConfigError(std::string(which) + " probability of '" + token + "' is invalid");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw ConfigError(std::string(which) + " token distribution sums to " + format_real(sum) +
                          ", not 1");
}

struct Sampler {
    std::vector<const std::string*> tokens;
    std::vector<double> cumulative;

    explicit Sampler(const std::map<std::string, double>& dist)
    {
        double acc = 0.0;
        for (const auto& [token, p] : dist) {
            if (p <= 0.0)
                continue;
            acc += p;
            tokens.push_back(&token);
            cumulative.push_back(acc);
        }
    }

    const std::string& draw(Rng& rng) const
    {
        const double u = rng.uniform() * cumulative.back();
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        if (it == cumulative.end())
            --it;
        return *tokens[static_cast<std::size_t>(it - cumulative.begin())];
    }
};

} // namespace

void validate(const GeneratorSpec& spec)
{
    if (spec.n_messages == 0)
        throw ConfigError("n_messages must be positive");
    if (!(spec.spam_fraction > 0.0 && spec.spam_fraction < 1.0))
        throw ConfigError("spam_fraction must lie strictly between 0 and 1");
    if (spec.min_tokens > spec.max_tokens)
        throw ConfigError("tokens_per_message range is empty");
    validate_distribution(spec.spam_tokens, "spam");
    validate_distribution(spec.legit_tokens, "legit");
}

GeneratorSpec parse_generator_spec(std::istream& in)
{
    GeneratorSpec spec;
    std::string raw;
    std::size_t line_no = 0;
    auto fail = [&](const std::string& what) {
        throw ConfigError("generator spec line " + std::to_string(line_no) + ": " + what);
    };
    while (std::getline(in, raw)) {
        ++line_no;
        auto line = trim(std::string_view(raw).substr(0, raw.find('#')));
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            fail("expected key=value");
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        try {
            if (key == "n_messages") {
                spec.n_messages = static_cast<std::uint32_t>(parse_unsigned(value));
            } else if (key == "spam_fraction") {
                spec.spam_fraction = parse_real(value);
            } else if (key == "seed") {
                spec.seed = parse_unsigned(value);
            } else if (key == "min_tokens") {
                spec.min_tokens = static_cast<std::uint32_t>(parse_unsigned(value));
            } else if (key == "max_tokens") {
                spec.max_tokens = static_cast<std::uint32_t>(parse_unsigned(value));
            } else if (key == "tokens_per_message") {
                const auto dash = value.find('-');
                spec.min_tokens = static_cast<std::uint32_t>(parse_unsigned(value.substr(0, dash)));
                spec.max_tokens = dash == std::string::npos
                                      ? spec.min_tokens
                                      : static_cast<std::uint32_t>(parse_unsigned(value.substr(dash + 1)));
            } else if (key.starts_with("spam.") || key.starts_with("legit.")) {
                const bool spam = key.starts_with("spam.");
                auto token = key.substr(spam ? 5 : 6);
                auto& dist = spam ? spec.spam_tokens : spec.legit_tokens;
                if (!dist.emplace(token, parse_real(value)).second)
                    fail("duplicate token '" + token + "'");
            } else {
                fail("unknown key '" + key + "'");
            }
        } catch (const DataError& e) {
            fail(e.what());
        }
    }
    validate(spec);
    return spec;
}

GeneratorSpec load_generator_spec(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open generator spec " + path.string());
    try {
        return parse_generator_spec(in);
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

void write_generator_spec(const GeneratorSpec& spec, std::ostream& out)
{
    out << "n_messages=" << spec.n_messages << '\n'
        << "spam_fraction=" << format_real(spec.spam_fraction) << '\n'
        << "tokens_per_message=" << spec.min_tokens << '-' << spec.max_tokens << '\n'
        << "seed=" << spec.seed << '\n';
    for (const auto& [token, p] : spec.spam_tokens)
        out << "spam." << token << '=' << format_real(p) << '\n';
    for (const auto& [token, p] : spec.legit_tokens)
        out << "legit." << token << '=' << format_real(p) << '\n';
}

LabeledDataset generate(const GeneratorSpec& spec)
{
    validate(spec);
    const Sampler spam(spec.spam_tokens);
    const Sampler legit(spec.legit_tokens);
    const std::size_t width = std::max<std::size_t>(6, std::to_string(spec.n_messages).size());

    std::vector<LabeledMessage> hams, spams;
    for (std::uint32_t i = 0; i < spec.n_messages; ++i) {
        Rng rng(spec.seed, i);
        const Label label = rng.uniform() < spec.spam_fraction ? Label::Spam : Label::Legitimate;
        const auto length =
            spec.min_tokens + static_cast<std::uint32_t>(rng.below(spec.max_tokens - spec.min_tokens + 1u));
        const auto& sampler = label == Label::Spam ? spam : legit;

        EmailMessage msg;
        for (std::uint32_t t = 0; t < length; ++t) {
            if (t)
                msg.body.push_back(' ');
            msg.body += sampler.draw(rng);
        }
        auto number = std::to_string(i);
        number.insert(0, width - number.size(), '0');
        msg.id = std::string(label == Label::Spam ? "spam/" : "ham/") + number + ".eml";
        (label == Label::Spam ? spams : hams).push_back({std::move(msg), label});
    }
    hams.insert(hams.end(), std::make_move_iterator(spams.begin()),
                std::make_move_iterator(spams.end()));
    return LabeledDataset(std::move(hams));
}

} // namespace sievekit
