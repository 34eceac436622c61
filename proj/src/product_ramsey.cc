#include <plram/errors.hh>
#include <plram/parallel.hh>
#include <plram/product_ramsey.hh>

#include <sstream>

using std::optional;
using std::pair;
using std::size_t;
using std::span;
using std::uint64_t;
using std::vector;

namespace plram
{
    namespace
    {
        auto check_pairs(const vector<pair<PLStructure, PLStructure>> & pairs, uint64_t colors) -> void
        {
            if (pairs.empty())
                throw ArityMismatch("a product plan needs at least one coordinate");
            if (colors < 1)
                throw Error("at least one color is required");
            for (size_t i = 0 ; i < pairs.size() ; ++i)
                if (pairs[i].first.arity() != 1 || pairs[i].second.arity() != 1)
                    throw ArityMismatch("coordinate " + std::to_string(i + 1) + " must use single-extension structures");
        }

        auto checked_product(uint64_t a, uint64_t b) -> optional<uint64_t>
        {
            if (a != 0 && b > std::numeric_limits<uint64_t>::max() / a)
                return std::nullopt;
            return a * b;
        }

        // prod_{j > i} copy_count[j], or nullopt on overflow
        auto later_copies(const vector<PlanCoordinate> & coords, size_t i) -> optional<uint64_t>
        {
            uint64_t result = 1;
            for (size_t j = i + 1 ; j < coords.size() ; ++j) {
                auto next = checked_product(result, coords[j].copy_count);
                if (! next)
                    return std::nullopt;
                result = *next;
            }
            return result;
        }

        auto blown_up_colors(uint64_t colors, const vector<PlanCoordinate> & coords, size_t i, const PlanOptions & options) -> uint64_t
        {
            auto exponent = later_copies(coords, i);
            if (! exponent) {
                if (colors == 1)
                    return 1;
                throw Overflow("color count for coordinate " + std::to_string(i + 1) + " overflows");
            }
            return checked_power(colors, *exponent, options.color_bound);
        }

        // Indices into host_copies of the pattern copies inside `target_copy`.
        auto inner_indices(const Embedding & target_copy, span<const Embedding> pattern_in_target,
                const PLStructure & target, span<const Embedding> host_copies) -> vector<size_t>
        {
            vector<size_t> result;
            result.reserve(pattern_in_target.size());
            for (auto & tau : pattern_in_target) {
                auto index = index_of_copy(host_copies, compose_embeddings(target_copy, tau, target));
                if (! index)
                    throw Error("composed copy missing from the host copy list");
                result.push_back(*index);
            }
            return result;
        }

        struct Scan
        {
            vector<Embedding> target_copies;
            optional<size_t> chosen;
            vector<size_t> inner;
        };

        auto scan_for_monochromatic(const PLStructure & pattern, const PLStructure & target, const PLStructure & host,
                span<const Embedding> host_copies, span<const Color> colors, Mode mode, unsigned threads) -> Scan
        {
            Scan scan;
            scan.target_copies = enumerate_copies(target, host, mode);
            auto pattern_in_target = enumerate_copies(pattern, target, mode);

            scan.chosen = first_satisfying(scan.target_copies.size(), threads, [&] (size_t t) {
                auto inner = inner_indices(scan.target_copies[t], pattern_in_target, target, host_copies);
                for (size_t j = 1 ; j < inner.size() ; ++j)
                    if (colors[inner[j]] != colors[inner[0]])
                        return false;
                return true;
            });
            if (scan.chosen)
                scan.inner = inner_indices(scan.target_copies[*scan.chosen], pattern_in_target, target, host_copies);
            return scan;
        }
    }

    auto tag_name(WitnessTag tag) -> const char *
    {
        return tag == WitnessTag::verified ? "verified" : "asserted";
    }

    auto checked_power(uint64_t base, uint64_t exponent, uint64_t bound) -> uint64_t
    {
        uint64_t result = 1;
        for (uint64_t e = 0 ; e < exponent ; ++e) {
            if (base <= 1)
                return base == 0 ? 0 : 1;
            auto next = checked_product(result, base);
            if (! next || *next > bound) {
                std::ostringstream msg;
                msg << base << "^" << exponent << " exceeds the color bound " << bound;
                throw Overflow(msg.str());
            }
            result = *next;
        }
        return result;
    }

    auto plan_product_witnesses(const vector<pair<PLStructure, PLStructure>> & pairs, uint64_t colors,
            const WitnessOracle & oracle, Mode mode, const PlanOptions & options) -> ProductPlan
    {
        check_pairs(pairs, colors);
        ProductPlan plan{colors, mode, vector<PlanCoordinate>(pairs.size())};
        for (size_t i = pairs.size() ; i-- > 0 ; ) {
            auto & coord = plan.coordinates[i];
            coord.pattern = pairs[i].first;
            coord.target = pairs[i].second;
            coord.colors = blown_up_colors(colors, plan.coordinates, i, options);
            auto answer = oracle(coord.pattern, coord.target, coord.colors, mode);
            if (answer.witness.arity() != 1)
                throw OracleFailure("oracle returned a witness with " + std::to_string(answer.witness.arity())
                        + " linear orders for coordinate " + std::to_string(i + 1));
            coord.witness = std::move(answer.witness);
            coord.tag = answer.tag;
            coord.copy_count = count_copies(coord.pattern, coord.witness, mode);
        }
        return plan;
    }

    auto plan_from_witnesses(const vector<pair<PLStructure, PLStructure>> & pairs, const vector<PLStructure> & witnesses,
            uint64_t colors, Mode mode, const PlanOptions & options) -> ProductPlan
    {
        check_pairs(pairs, colors);
        if (witnesses.size() != pairs.size())
            throw SizeMismatch("expected " + std::to_string(pairs.size()) + " witnesses, got " + std::to_string(witnesses.size()));
        ProductPlan plan{colors, mode, vector<PlanCoordinate>(pairs.size())};
        for (size_t i = pairs.size() ; i-- > 0 ; ) {
            auto & coord = plan.coordinates[i];
            coord.pattern = pairs[i].first;
            coord.target = pairs[i].second;
            coord.witness = witnesses[i];
            if (coord.witness.arity() != 1)
                throw ArityMismatch("witness " + std::to_string(i + 1) + " must have one linear order");
            coord.colors = blown_up_colors(colors, plan.coordinates, i, options);
            coord.tag = WitnessTag::asserted;
            coord.copy_count = count_copies(coord.pattern, coord.witness, mode);
        }
        return plan;
    }

    auto ProductColoring::at(span<const size_t> indices) const -> Color
    {
        if (indices.size() != extents.size())
            throw SizeMismatch("expected " + std::to_string(extents.size()) + " indices");
        size_t flat = 0;
        for (size_t i = 0 ; i < extents.size() ; ++i) {
            if (indices[i] >= extents[i])
                throw IndexError("copy index " + std::to_string(indices[i]) + " outside coordinate " + std::to_string(i + 1));
            flat = flat * extents[i] + indices[i];
        }
        return values[flat];
    }

    auto extract_product_monochromatic(const ProductPlan & plan, const ProductColoring & chi, unsigned threads) -> ProductExtraction
    {
        int k = plan.arity();
        if (static_cast<int>(chi.extents.size()) != k)
            throw SizeMismatch("coloring has " + std::to_string(chi.extents.size()) + " coordinates, plan has " + std::to_string(k));
        size_t total = 1;
        for (int i = 0 ; i < k ; ++i) {
            if (chi.extents[i] != plan.coordinates[i].copy_count)
                throw SizeMismatch("coloring extent " + std::to_string(chi.extents[i]) + " differs from the copy count of coordinate "
                        + std::to_string(i + 1));
            total *= chi.extents[i];
        }
        if (chi.values.size() != total)
            throw SizeMismatch("coloring is not total on the product domain");
        if (chi.colors != plan.colors)
            throw SizeMismatch("coloring uses " + std::to_string(chi.colors) + " colors, plan was built for "
                    + std::to_string(plan.colors));
        for (auto v : chi.values)
            if (v >= chi.colors)
                throw IndexError("color " + std::to_string(v) + " out of range");

        ProductExtraction result;
        result.color = 0;
        // residual coloring over the coordinates not yet fixed, row-major
        vector<Color> residual = chi.values;
        bool vacuous = false;

        for (int i = 0 ; i < k ; ++i) {
            auto & coord = plan.coordinates[i];
            auto host_copies = enumerate_copies(coord.pattern, coord.witness, plan.mode);
            size_t block = host_copies.empty() ? 0 : residual.size() / host_copies.size();

            // tuple-valued colors, first tuple entry most significant
            vector<Color> encoded(host_copies.size(), 0);
            for (size_t x = 0 ; x < host_copies.size() ; ++x) {
                Color code = 0;
                for (size_t t = 0 ; t < block ; ++t)
                    code = code * plan.colors + residual[x * block + t];
                encoded[x] = code;
            }

            auto scan = scan_for_monochromatic(coord.pattern, coord.target, coord.witness, host_copies, encoded, plan.mode, threads);
            if (! scan.chosen) {
                std::ostringstream msg;
                msg << "no copy of the target in witness " << (i + 1) << " is monochromatic under the induced "
                    << coord.colors << "-coloring";
                if (scan.target_copies.empty())
                    msg << " (the witness contains no copy of the target)";
                throw NotMonochromatic(msg.str());
            }
            result.copies.push_back(scan.target_copies[*scan.chosen]);

            if (scan.inner.empty() || vacuous) {
                // the final product is empty, so any residual will do
                vacuous = true;
                residual.assign(block, 0);
                result.color = 0;
                continue;
            }
            size_t x = scan.inner.front();
            residual.assign(residual.begin() + x * block, residual.begin() + (x + 1) * block);
            if (i == k - 1)
                result.color = encoded[x];
        }

        return result;
    }

    auto extract_single_monochromatic(const PLStructure & pattern, const PLStructure & target, const PLStructure & host,
            span<const Color> colors, Mode mode, unsigned threads) -> optional<SingleExtraction>
    {
        auto host_copies = enumerate_copies(pattern, host, mode);
        if (colors.size() != host_copies.size())
            throw SizeMismatch("coloring has " + std::to_string(colors.size()) + " entries, host has "
                    + std::to_string(host_copies.size()) + " copies of the pattern");
        auto scan = scan_for_monochromatic(pattern, target, host, host_copies, colors, mode, threads);
        if (! scan.chosen)
            return std::nullopt;
        return SingleExtraction{scan.target_copies[*scan.chosen], scan.inner.empty() ? Color{0} : colors[scan.inner.front()]};
    }
}
