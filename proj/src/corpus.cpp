#include "sievekit/corpus.hpp"

#include "sievekit/error.hpp"
#include "sievekit/random.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>
#include <unordered_set>

namespace sievekit {

namespace fs = std::filesystem;

namespace {

char ascii_lower(char c)
{
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

bool iequals(std::string_view a, std::string_view b)
{
    return a.size() == b.size() &&
           std::equal(a.begin(), a.end(), b.begin(),
                      [](char x, char y) { return ascii_lower(x) == ascii_lower(y); });
}

bool is_header_name_char(unsigned char c)
{
    return c >= 33 && c <= 126 && c != ':';
}

bool is_fold_space(char c)
{
    return c == ' ' || c == '\t';
}

std::string_view ltrim_space(std::string_view s)
{
    while (!s.empty() && is_fold_space(s.front()))
        s.remove_prefix(1);
    return s;
}

constexpr std::string_view replacement_char = "\xEF\xBF\xBD";

} // namespace

std::string_view to_string(Label label)
{
    return label == Label::Spam ? "SPAM" : "LEGITIMATE";
}

std::optional<Label> parse_label(std::string_view text)
{
    if (iequals(text, "spam"))
        return Label::Spam;
    if (iequals(text, "legitimate") || iequals(text, "ham") || iequals(text, "legit"))
        return Label::Legitimate;
    return std::nullopt;
}

const Header* EmailMessage::find_header(std::string_view name) const
{
    auto it = std::find_if(headers.begin(), headers.end(),
                           [&](const Header& h) { return iequals(h.name, name); });
    return it == headers.end() ? nullptr : &*it;
}

std::string sanitize_utf8(std::string_view raw)
{
    std::string out;
    out.reserve(raw.size());
    std::size_t i = 0;
    const std::size_t n = raw.size();
    while (i < n) {
        const auto b = static_cast<unsigned char>(raw[i]);
        if (b < 0x80) {
            out.push_back(static_cast<char>(b));
            ++i;
            continue;
        }
        std::size_t need = 0;
        unsigned char lo = 0x80, hi = 0xBF;
        if (b >= 0xC2 && b <= 0xDF) {
            need = 1;
        } else if (b == 0xE0) {
            need = 2;
            lo = 0xA0;
        } else if ((b >= 0xE1 && b <= 0xEC) || b == 0xEE || b == 0xEF) {
            need = 2;
        } else if (b == 0xED) {
            need = 2;
            hi = 0x9F;
        } else if (b == 0xF0) {
            need = 3;
            lo = 0x90;
        } else if (b >= 0xF1 && b <= 0xF3) {
            need = 3;
        } else if (b == 0xF4) {
            need = 3;
            hi = 0x8F;
        } else {
            out.append(replacement_char);
            ++i;
            continue;
        }
        std::size_t j = i + 1;
        bool ok = true;
        for (std::size_t k = 0; k < need; ++k, ++j) {
            if (j >= n) {
                ok = false;
                break;
            }
            const auto c = static_cast<unsigned char>(raw[j]);
            const unsigned char min = k == 0 ? lo : 0x80;
            const unsigned char max = k == 0 ? hi : 0xBF;
            if (c < min || c > max) {
                ok = false;
                break;
            }
        }
        if (ok)
            out.append(raw.substr(i, j - i));
        else
            out.append(replacement_char);
        i = j;
    }
    return out;
}

EmailMessage parse_message(std::string_view raw_bytes, std::string id)
{
    const std::string text = sanitize_utf8(raw_bytes);
    const std::string_view raw = text;

    EmailMessage msg;
    msg.id = std::move(id);

    std::size_t pos = 0;
    while (pos < raw.size()) {
        const auto eol = raw.find('\n', pos);
        const std::size_t next = eol == std::string_view::npos ? raw.size() : eol + 1;
        std::string_view line = raw.substr(pos, next - pos);
        if (!line.empty() && line.back() == '\n')
            line.remove_suffix(1);
        while (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);

        if (line.empty()) {
            msg.body.assign(raw.substr(next));
            break;
        }
        if (is_fold_space(line.front()) && !msg.headers.empty()) {
            auto& value = msg.headers.back().value;
            const auto rest = ltrim_space(line);
            if (!value.empty())
                value.push_back(' ');
            value.append(rest);
            pos = next;
            continue;
        }
        const auto colon = line.find(':');
        const auto name = line.substr(0, colon == std::string_view::npos ? 0 : colon);
        const bool is_header =
            colon != std::string_view::npos && !name.empty() &&
            std::all_of(name.begin(), name.end(),
                        [](char c) { return is_header_name_char(static_cast<unsigned char>(c)); });
        if (!is_header) {
            msg.body.assign(raw.substr(pos));
            break;
        }
        msg.headers.push_back({std::string(name), std::string(ltrim_space(line.substr(colon + 1)))});
        pos = next;
    }

    if (const auto* subject = msg.find_header("Subject"))
        msg.subject = subject->value;
    return msg;
}

std::string render_message(const EmailMessage& message)
{
    std::string out;
    for (const auto& h : message.headers) {
        out.append(h.name);
        out.append(": ");
        out.append(h.value);
        out.push_back('\n');
    }
    out.push_back('\n');
    out.append(message.body);
    return out;
}

LabeledDataset::LabeledDataset(std::vector<LabeledMessage> items) : items_(std::move(items))
{
    std::unordered_set<std::string_view> seen;
    seen.reserve(items_.size());
    for (const auto& item : items_) {
        if (!seen.insert(item.message.id).second)
            throw DataError("duplicate message id '" + item.message.id + "'");
        if (item.label == Label::Spam)
            ++spam_;
    }
}

namespace {

std::string read_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError("cannot read message file " + path.string());
    std::string data{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    if (in.bad())
        throw DataError("error reading message file " + path.string());
    return data;
}

void load_class(const fs::path& dir, std::string_view prefix, Label label,
                std::vector<LabeledMessage>& out)
{
    std::error_code ec;
    if (!fs::is_directory(dir, ec))
        throw ConfigError("corpus directory missing: " + dir.string());

    std::vector<std::string> names;
    for (fs::directory_iterator it(dir, ec), end; !ec && it != end; it.increment(ec)) {
        if (it->is_regular_file())
            names.push_back(it->path().filename().string());
    }
    if (ec)
        throw DataError("cannot list " + dir.string() + ": " + ec.message());
    std::sort(names.begin(), names.end());

    for (const auto& name : names) {
        auto raw = read_file(dir / name);
        out.push_back({parse_message(raw, std::string(prefix) + "/" + name), label});
    }
}

} // namespace

LabeledDataset load_dataset(const fs::path& root)
{
    std::error_code ec;
    if (!fs::is_directory(root, ec))
        throw ConfigError("corpus root is not a directory: " + root.string());
    std::vector<LabeledMessage> items;
    load_class(root / "ham", "ham", Label::Legitimate, items);
    load_class(root / "spam", "spam", Label::Spam, items);
    return LabeledDataset(std::move(items));
}

void write_dataset(const LabeledDataset& dataset, const fs::path& root)
{
    fs::create_directories(root / "spam");
    fs::create_directories(root / "ham");
    for (const auto& item : dataset) {
        const auto& id = item.message.id;
        const auto slash = id.find('/');
        const auto dir = id.substr(0, slash);
        if (slash == std::string::npos || (dir != "spam" && dir != "ham") ||
            id.find('/', slash + 1) != std::string::npos || slash + 1 == id.size())
            throw DataError("message id '" + id + "' is not of the form spam/<name> or ham/<name>");
        const auto path = root / dir / id.substr(slash + 1);
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out << render_message(item.message);
        if (!out)
            throw DataError("cannot write " + path.string());
    }
}

namespace {

std::vector<std::size_t> positions_of(const LabeledDataset& ds, Label label)
{
    std::vector<std::size_t> pos;
    for (std::size_t i = 0; i < ds.size(); ++i)
        if (ds[i].label == label)
            pos.push_back(i);
    return pos;
}

LabeledDataset gather(const LabeledDataset& ds, const std::vector<std::size_t>& idx)
{
    std::vector<LabeledMessage> items;
    items.reserve(idx.size());
    for (auto i : idx)
        items.push_back(ds[i]);
    return LabeledDataset(std::move(items));
}

} // namespace

Split split(const LabeledDataset& dataset, double train_fraction, std::uint64_t seed)
{
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw UsageError("train fraction must lie strictly between 0 and 1");
    if (dataset.empty())
        throw DataError("cannot split an empty dataset");

    std::vector<std::size_t> train_idx, test_idx;
    for (Label label : {Label::Legitimate, Label::Spam}) {
        auto pos = positions_of(dataset, label);
        Rng rng(seed, static_cast<std::uint64_t>(label));
        rng.shuffle(std::span(pos));
        const auto n_train = static_cast<std::size_t>(
            std::floor(train_fraction * static_cast<double>(pos.size())));
        train_idx.insert(train_idx.end(), pos.begin(), pos.begin() + n_train);
        test_idx.insert(test_idx.end(), pos.begin() + n_train, pos.end());
    }
    if (train_idx.empty() || test_idx.empty())
        throw DataError("train fraction too extreme for a dataset of " +
                        std::to_string(dataset.size()) + " messages");
    // Training order decides k-NN distance ties, so the classes are
    // interleaved rather than left in the legitimate-first input order.
    std::sort(train_idx.begin(), train_idx.end());
    Rng(seed, 4).shuffle(std::span(train_idx));
    std::sort(test_idx.begin(), test_idx.end());
    return {gather(dataset, train_idx), gather(dataset, test_idx)};
}

LabeledDataset subsample(const LabeledDataset& dataset, std::size_t size, std::uint64_t seed)
{
    if (size > dataset.size())
        throw UsageError("subsample of " + std::to_string(size) + " exceeds corpus size " +
                         std::to_string(dataset.size()));
    const std::size_t total = dataset.size();
    const std::size_t spam = dataset.spam_count();
    const std::size_t legit = total - spam;
    std::size_t n_spam = total == 0 ? 0 : (2 * size * spam + total) / (2 * total);
    n_spam = std::min(n_spam, spam);
    if (size - n_spam > legit)
        n_spam = size - legit;

    std::vector<std::size_t> keep;
    for (Label label : {Label::Legitimate, Label::Spam}) {
        auto pos = positions_of(dataset, label);
        Rng rng(seed, 2 + static_cast<std::uint64_t>(label));
        rng.shuffle(std::span(pos));
        const std::size_t take = label == Label::Spam ? n_spam : size - n_spam;
        keep.insert(keep.end(), pos.begin(), pos.begin() + take);
    }
    std::sort(keep.begin(), keep.end());
    return gather(dataset, keep);
}

} // namespace sievekit
