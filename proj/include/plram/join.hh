#pragma once

#include <plram/embeddings.hh>
#include <plram/orders.hh>

#include <compare>
#include <optional>
#include <vector>

namespace plram
{
    /// The join of k single-extension factors. Product elements (z_1, ..., z_k)
    /// are flattened row-major: flat = sum z_i * prod_{j>i} n_j. The product
    /// order is strict in every coordinate; linear order i compares the first
    /// differing coordinate in the cyclic scan i, i+1, ..., i+k-1.
    struct JoinedStructure
    {
        std::vector<PLStructure> factors;
        PLStructure product;
        std::vector<int> strides;

        auto arity() const -> int { return static_cast<int>(factors.size()); }
        auto flat(std::span<const int> coordinates) const -> int;
        auto coordinate(int flat_index, int factor) const -> int;
        auto coordinates(int flat_index) const -> std::vector<int>;
    };

    /// A copy of a k-order pattern in a join, together with its projections.
    /// components[i] embeds (X, P, L_i) into factor i and is packed by the
    /// pattern's i-th order.
    struct CanonicalCopy
    {
        std::vector<Embedding> components;
        Embedding assembled;
    };

    /// Throws ArityMismatch when the list is empty or a factor has k != 1.
    auto join(const std::vector<PLStructure> & factors) -> JoinedStructure;

    /// order is zero based.
    auto shifted_lex_compare(const JoinedStructure & js, int order, int a, int b) -> std::strong_ordering;

    /// Builds (pi_1, ..., pi_k) into a copy of the pattern in the product.
    /// Throws InvalidComponent when component i is not a copy of the i-th slice.
    auto assemble_canonical_copy(const JoinedStructure & js, const PLStructure & pattern,
            const std::vector<Embedding> & components, Mode mode = Mode::strong) -> CanonicalCopy;

    /// Projections of `e` when every one of them is a copy of the matching
    /// slice into its factor; empty when `e` is not canonical.
    auto decompose_canonical_copy(const JoinedStructure & js, const PLStructure & pattern,
            const Embedding & e, Mode mode = Mode::strong) -> std::optional<std::vector<Embedding>>;
}
