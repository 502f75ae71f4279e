#include "phasor/vocabulary.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "phasor/errors.hpp"

namespace phasor {

void Vocabulary::add(std::string name, PhasorVector vector)
{
    if (name.empty()) {
        throw ValidationError("vocabulary entry name must not be empty");
    }
    if (contains(name)) {
        throw ValidationError("duplicate vocabulary entry '" + name + "'");
    }
    if (entries_.empty() && dim_ == 0) {
        dim_ = vector.dim();
    }
    if (vector.dim() != dim_) {
        throw DimensionMismatch(dim_, vector.dim());
    }
    entries_.push_back({std::move(name), std::move(vector)});
}

const PhasorVector *Vocabulary::find(std::string_view name) const
{
    for (const auto &e : entries_) {
        if (e.name == name) {
            return &e.vector;
        }
    }
    return nullptr;
}

const PhasorVector &Vocabulary::at(std::string_view name) const
{
    if (const auto *v = find(name)) {
        return *v;
    }
    throw ValidationError("unknown vocabulary entry '" + std::string(name) + "'");
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view name)
{
    // FNV-1a over the name, folded with the seed through splitmix64.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : name) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (h | 1U);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Vocabulary Vocabulary::random(std::size_t dim, std::uint64_t seed,
        const std::vector<std::string> &names)
{
    Vocabulary vocab(dim);
    for (const auto &name : names) {
        vocab.add(name, random_vector(dim, derive_seed(seed, name)));
    }
    return vocab;
}

std::string vocabulary_to_json(const Vocabulary &vocab)
{
    nlohmann::json doc;
    doc["dim"] = vocab.dim();
    doc["entries"] = nlohmann::json::array();
    for (const auto &e : vocab.entries()) {
        nlohmann::json phases = nlohmann::json::array();
        for (double p : e.vector.phases()) {
            phases.push_back(p);
        }
        doc["entries"].push_back({{"name", e.name}, {"phases", std::move(phases)}});
    }
    return doc.dump(2);
}

Vocabulary vocabulary_from_json(std::string_view text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
        const auto dim = doc.at("dim").get<std::size_t>();
        Vocabulary vocab(dim);
        for (const auto &entry : doc.at("entries")) {
            vocab.add(entry.at("name").get<std::string>(),
                    PhasorVector(entry.at("phases").get<std::vector<double>>()));
        }
        return vocab;
    } catch (const nlohmann::json::exception &e) {
        throw ValidationError(std::string("invalid vocabulary document: ") + e.what());
    }
}

Vocabulary load_vocabulary(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open vocabulary file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return vocabulary_from_json(buf.str());
}

void save_vocabulary(const Vocabulary &vocab, const std::filesystem::path &path)
{
    std::ofstream out(path);
    if (!out) {
        throw ValidationError("cannot write vocabulary file " + path.string());
    }
    out << vocabulary_to_json(vocab) << '\n';
}

} // namespace phasor
