#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "phasor/fhrr.hpp"

namespace phasor {

struct VocabularyEntry
{
    std::string name;
    PhasorVector vector;
};

/// Ordered set of named vectors sharing one dimension.
class Vocabulary
{
public:
    Vocabulary() = default;
    explicit Vocabulary(std::size_t dim) : dim_(dim) {}

    /// Throws ValidationError on a duplicate name, DimensionMismatch on a
    /// vector of the wrong size.
    void add(std::string name, PhasorVector vector);

    const PhasorVector *find(std::string_view name) const;
    const PhasorVector &at(std::string_view name) const;
    bool contains(std::string_view name) const { return find(name) != nullptr; }

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const std::vector<VocabularyEntry> &entries() const { return entries_; }
    const VocabularyEntry &operator[](std::size_t i) const { return entries_[i]; }

    /// Entries drawn with random_vector, one derived seed per name.
    static Vocabulary random(std::size_t dim, std::uint64_t seed,
            const std::vector<std::string> &names);

private:
    std::size_t dim_ = 0;
    std::vector<VocabularyEntry> entries_;
};

/// Deterministic per-name seed, stable across platforms.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view name);

// {"dim": N, "entries": [{"name": str, "phases": [radians...]}]}
std::string vocabulary_to_json(const Vocabulary &vocab);
Vocabulary vocabulary_from_json(std::string_view text);
Vocabulary load_vocabulary(const std::filesystem::path &path);
void save_vocabulary(const Vocabulary &vocab, const std::filesystem::path &path);

} // namespace phasor
