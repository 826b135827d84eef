#include "test_support.hpp"

#include <fstream>
#include <iterator>
#include <stdexcept>

namespace testing {

namespace fs = std::filesystem;

TempDir::TempDir(const std::string& tag)
{
    static std::uint64_t counter = 0;
    sievekit::Rng rng(static_cast<std::uint64_t>(std::hash<std::string>{}(tag)), ++counter);
    for (int attempt = 0; attempt < 100; ++attempt) {
        auto candidate = fs::temp_directory_path() /
                         ("sievekit-" + tag + "-" + std::to_string(rng.next_u64() % 1000000000));
        if (fs::create_directories(candidate)) {
            path_ = candidate;
            return;
        }
    }
    throw std::runtime_error("cannot create a temporary directory");
}

TempDir::~TempDir()
{
    std::error_code ec;
    fs::remove_all(path_, ec);
}

void write_file(const fs::path& path, const std::string& content)
{
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
}

std::string read_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

sievekit::FeatureVector to_vector(const std::vector<int>& dense)
{
    std::vector<std::uint32_t> idx;
    for (std::size_t j = 0; j < dense.size(); ++j)
        if (dense[j])
            idx.push_back(static_cast<std::uint32_t>(j));
    return sievekit::FeatureVector(std::move(idx));
}

std::vector<sievekit::Example> to_examples(const std::vector<std::vector<int>>& xs,
                                           const std::vector<sievekit::Label>& ys)
{
    std::vector<sievekit::Example> out;
    for (std::size_t i = 0; i < xs.size(); ++i)
        out.push_back({to_vector(xs[i]), ys[i]});
    return out;
}

std::vector<int> to_dense(std::uint64_t bits, std::size_t d)
{
    std::vector<int> v(d);
    for (std::size_t j = 0; j < d; ++j)
        v[j] = static_cast<int>((bits >> j) & 1u);
    return v;
}

BinaryData random_binary_data(sievekit::Rng& rng, std::size_t n, std::size_t d, double density)
{
    BinaryData data;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<int> row(d);
        for (auto& v : row)
            v = rng.uniform() < density ? 1 : 0;
        data.xs.push_back(std::move(row));
        // First two rows pin one example of each class.
        const bool spam = i == 0 ? true : i == 1 ? false : rng.uniform() < 0.5;
        data.ys.push_back(spam ? sievekit::Label::Spam : sievekit::Label::Legitimate);
    }
    return data;
}

} // namespace testing
