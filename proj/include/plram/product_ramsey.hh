#pragma once

#include <plram/embeddings.hh>
#include <plram/orders.hh>

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace plram
{
    using Color = std::uint64_t;

    enum class WitnessTag
    {
        verified,
        asserted
    };

    auto tag_name(WitnessTag tag) -> const char *;

    /// A structure Z claimed to be Ramsey for (pattern, target) with the given
    /// number of colors. `verified` means a search established it; `asserted`
    /// means it rests on a known argument (pigeonhole, rigidity, one color).
    struct OracleAnswer
    {
        PLStructure witness;
        WitnessTag tag;
    };

    using WitnessOracle = std::function<OracleAnswer (const PLStructure & pattern, const PLStructure & target,
            std::uint64_t colors, Mode mode)>;

    struct PlanCoordinate
    {
        PLStructure pattern;
        PLStructure target;
        PLStructure witness;
        /// Color count the witness must handle: base^(prod of later copy counts).
        std::uint64_t colors;
        WitnessTag tag;
        /// |binom(witness, pattern)|
        std::size_t copy_count;
    };

    struct ProductPlan
    {
        std::uint64_t colors;
        Mode mode;
        std::vector<PlanCoordinate> coordinates;

        auto arity() const -> int { return static_cast<int>(coordinates.size()); }
    };

    struct PlanOptions
    {
        std::uint64_t color_bound = std::numeric_limits<std::int64_t>::max();
    };

    /// base^exponent, or Overflow when it would exceed bound.
    auto checked_power(std::uint64_t base, std::uint64_t exponent, std::uint64_t bound) -> std::uint64_t;

    /// Chooses witnesses from the last coordinate to the first, so each
    /// coordinate's blown-up color count is known before asking the oracle.
    auto plan_product_witnesses(const std::vector<std::pair<PLStructure, PLStructure>> & pairs, std::uint64_t colors,
            const WitnessOracle & oracle, Mode mode = Mode::strong, const PlanOptions & options = {}) -> ProductPlan;

    /// Rebuilds the bookkeeping for witnesses chosen elsewhere; tags are `asserted`.
    auto plan_from_witnesses(const std::vector<std::pair<PLStructure, PLStructure>> & pairs,
            const std::vector<PLStructure> & witnesses, std::uint64_t colors, Mode mode = Mode::strong,
            const PlanOptions & options = {}) -> ProductPlan;

    /// A coloring of binom(Z_1, X_1) x ... x binom(Z_k, X_k), row-major over
    /// the lexicographically ordered copy lists of each coordinate.
    struct ProductColoring
    {
        std::uint64_t colors;
        std::vector<std::size_t> extents;
        std::vector<Color> values;

        auto at(std::span<const std::size_t> indices) const -> Color;
    };

    /// Copies of each target in its witness and the common color.
    struct ProductExtraction
    {
        std::vector<Embedding> copies;
        Color color;
    };

    auto extract_product_monochromatic(const ProductPlan & plan, const ProductColoring & chi,
            unsigned threads = 1) -> ProductExtraction;

    struct SingleExtraction
    {
        Embedding copy;
        Color color;
    };

    /// First copy of `target` in `host` (lexicographic scan) whose pattern
    /// copies all share one color. `colors` is indexed like
    /// enumerate_copies(pattern, host, mode). When the target contains no
    /// copy of the pattern the first target copy is returned with color 0.
    auto extract_single_monochromatic(const PLStructure & pattern, const PLStructure & target, const PLStructure & host,
            std::span<const Color> colors, Mode mode = Mode::strong, unsigned threads = 1) -> std::optional<SingleExtraction>;
}
