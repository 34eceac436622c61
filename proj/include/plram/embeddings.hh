#pragma once

#include <plram/orders.hh>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace plram
{
    /// Strong maps preserve the partial order in both directions; weak maps
    /// only need x < y to imply f(x) < f(y). Linear orders are always
    /// preserved in both directions.
    enum class Mode
    {
        strong,
        weak
    };

    auto mode_name(Mode mode) -> std::string;
    auto parse_mode(const std::string & text) -> std::optional<Mode>;

    /// An injective map from a pattern into a host. image[j] is the host
    /// element receiving the pattern element of first-order rank j; since the
    /// first linear order is preserved, the image set determines the map.
    struct Embedding
    {
        std::vector<int> image;

        auto pattern_size() const -> int { return static_cast<int>(image.size()); }

        auto operator==(const Embedding &) const -> bool = default;
        auto operator<=>(const Embedding &) const = default;
    };

    auto check_embedding(const Embedding & map, const PLStructure & pattern, const PLStructure & host,
            Mode mode = Mode::strong) -> bool;

    /// Every copy of `pattern` in `host`, in lexicographic order of image lists.
    auto enumerate_copies(const PLStructure & pattern, const PLStructure & host,
            Mode mode = Mode::strong) -> std::vector<Embedding>;

    auto count_copies(const PLStructure & pattern, const PLStructure & host, Mode mode = Mode::strong) -> std::size_t;

    /// The only candidate map onto `subset`, if it is a copy.
    auto copy_from_subset(std::span<const int> subset, const PLStructure & pattern, const PLStructure & host,
            Mode mode = Mode::strong) -> std::optional<Embedding>;

    /// outer: middle -> host, inner: pattern -> middle. Result maps pattern -> host.
    auto compose_embeddings(const Embedding & outer, const Embedding & inner, const PLStructure & middle) -> Embedding;

    /// As above, and in debug builds asserts the result is a copy of pattern in host.
    auto compose_embeddings(const Embedding & outer, const Embedding & inner, const PLStructure & pattern,
            const PLStructure & middle, const PLStructure & host, Mode mode = Mode::strong) -> Embedding;

    /// element_map(e, pattern)[x] is the host element receiving pattern element x.
    auto element_map(const Embedding & e, const PLStructure & pattern) -> std::vector<int>;

    /// Inverse of element_map: packs a per-element map by the pattern's first order.
    auto embedding_from_map(std::span<const int> map, const PLStructure & pattern) -> Embedding;

    auto identity_embedding(const PLStructure & s) -> Embedding;

    /// Position of `e` in a lexicographically sorted copy list.
    auto index_of_copy(std::span<const Embedding> sorted_copies, const Embedding & e) -> std::optional<std::size_t>;

    /// Whitespace separated host indices.
    auto format_copy(const Embedding & e) -> std::string;
    auto parse_copy(const std::string & text) -> Embedding;
}
