#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sievekit {

/// Class of a message. The numeric order (LEGITIMATE < SPAM) is fixed and
/// used wherever labels are sorted or serialized.
enum class Label : std::uint8_t { Legitimate = 0, Spam = 1 };

std::string_view to_string(Label label);
/// Accepts "spam", "legitimate", "ham" (any case).
std::optional<Label> parse_label(std::string_view text);

struct Header {
    std::string name;
    std::string value;

    bool operator==(const Header&) const = default;
};

struct EmailMessage {
    std::vector<Header> headers;
    std::string subject;
    std::string body;
    std::string id;

    /// First header whose name matches case-insensitively.
    const Header* find_header(std::string_view name) const;

    bool operator==(const EmailMessage&) const = default;
};

/// Replaces every ill-formed UTF-8 sequence with U+FFFD (one replacement per
/// maximal invalid subpart).
std::string sanitize_utf8(std::string_view raw);

/// Splits raw text into a header block and a body.
///
/// Header lines have the form `Name: value` where Name is a run of printable
/// ASCII other than ':'. Lines starting with a space or tab continue the
/// previous header and are folded in with a single space. The first empty
/// line ends the header block; the body is everything after it, verbatim.
/// A line that is neither a header nor a continuation also ends the block
/// and becomes the first body line. Never fails.
EmailMessage parse_message(std::string_view raw, std::string id = {});

/// Headers, one `Name: value` line each, then an empty line, then the body.
/// parse_message(render_message(m)) == m for any parsed m (ids aside).
std::string render_message(const EmailMessage& message);

struct LabeledMessage {
    EmailMessage message;
    Label label;
};

/// Ordered collection of labeled messages with unique ids.
class LabeledDataset {
public:
    LabeledDataset() = default;
    /// Throws DataError on a duplicate id.
    explicit LabeledDataset(std::vector<LabeledMessage> items);

    const std::vector<LabeledMessage>& items() const { return items_; }
    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }
    std::size_t spam_count() const { return spam_; }
    std::size_t legit_count() const { return items_.size() - spam_; }
    std::size_t count(Label label) const
    {
        return label == Label::Spam ? spam_count() : legit_count();
    }

    auto begin() const { return items_.begin(); }
    auto end() const { return items_.end(); }
    const LabeledMessage& operator[](std::size_t i) const { return items_[i]; }

private:
    std::vector<LabeledMessage> items_;
    std::size_t spam_ = 0;
};

/// Reads `<root>/spam/*` and `<root>/ham/*`. Ids are "spam/<file>" and
/// "ham/<file>"; items are ordered legitimate first, then by file name.
/// Missing subdirectory -> ConfigError; unreadable file -> DataError.
LabeledDataset load_dataset(const std::filesystem::path& root);

/// Writes each message to `<root>/<id>` using render_message. Ids must be of
/// the form "spam/<name>" or "ham/<name>".
void write_dataset(const LabeledDataset& dataset, const std::filesystem::path& root);

struct Split {
    LabeledDataset train;
    LabeledDataset test;
};

/// Stratified split. Each class's item positions are permuted with
/// Rng(seed, stream) (stream 0 for legitimate, 1 for spam) and the first
/// floor(train_fraction * class_size) go to train. The test half keeps the
/// input order; the train half is the input-ordered selection permuted with
/// Rng(seed, 4), so that classes are interleaved. Throws DataError if either
/// half ends up empty.
Split split(const LabeledDataset& dataset, double train_fraction, std::uint64_t seed);

/// Stratified seeded subsample of `size` items keeping the spam fraction
/// (spam share rounded to nearest). Prefixes are nested: for the same seed a
/// smaller subsample is contained in a larger one.
LabeledDataset subsample(const LabeledDataset& dataset, std::size_t size, std::uint64_t seed);

} // namespace sievekit
