#include <plram/errors.hh>
#include <plram/ramsey_engine.hh>

using std::size_t;
using std::uint64_t;
using std::vector;

namespace plram
{
    namespace
    {
        auto check_pair(const PLStructure & a, const PLStructure & b) -> void
        {
            if (a.arity() != b.arity())
                throw ArityMismatch("A has " + std::to_string(a.arity()) + " linear orders, B has " + std::to_string(b.arity()));
            for (auto * s : {&a, &b}) {
                auto report = validate_structure(*s);
                if (! report.ok())
                    throw InvalidStructure(report.describe());
            }
        }

        auto slices(const PLStructure & a, const PLStructure & b) -> vector<std::pair<PLStructure, PLStructure>>
        {
            vector<std::pair<PLStructure, PLStructure>> result;
            for (int i = 0 ; i < a.arity() ; ++i)
                result.emplace_back(slice_order(a, i), slice_order(b, i));
            return result;
        }

        auto assemble_manifest(const PLStructure & a, const PLStructure & b, uint64_t colors, Mode mode, ProductPlan plan)
            -> ConstructionManifest
        {
            vector<PLStructure> witnesses;
            for (auto & coord : plan.coordinates)
                witnesses.push_back(coord.witness);
            auto joined = join(witnesses);
            return ConstructionManifest{mode, colors, a, b, std::move(plan), std::move(joined)};
        }
    }

    auto synthesize_construction(const PLStructure & a, const PLStructure & b, uint64_t colors,
            const WitnessOracle & oracle, Mode mode, const PlanOptions & options) -> ConstructionManifest
    {
        check_pair(a, b);
        auto plan = plan_product_witnesses(slices(a, b), colors, oracle, mode, options);
        return assemble_manifest(a, b, colors, mode, std::move(plan));
    }

    auto manifest_from_witnesses(const PLStructure & a, const PLStructure & b, const vector<PLStructure> & witnesses,
            uint64_t colors, Mode mode, const PlanOptions & options) -> ConstructionManifest
    {
        check_pair(a, b);
        auto plan = plan_from_witnesses(slices(a, b), witnesses, colors, mode, options);
        return assemble_manifest(a, b, colors, mode, std::move(plan));
    }

    auto copies_inside(const Embedding & outer, const PLStructure & pattern, const PLStructure & middle, Mode mode) -> vector<Embedding>
    {
        vector<Embedding> result;
        for (auto & tau : enumerate_copies(pattern, middle, mode))
            result.push_back(compose_embeddings(outer, tau, middle));
        return result;
    }

    auto extract_monochromatic_copy(const ConstructionManifest & manifest, const CopyColoring & chi, unsigned threads) -> Extraction
    {
        auto & host = manifest.host();
        check_coloring(chi, manifest.a, host, manifest.mode);
        if (chi.colors > manifest.colors)
            throw SizeMismatch("coloring uses " + std::to_string(chi.colors) + " colors, the construction handles "
                    + std::to_string(manifest.colors));

        int k = manifest.arity();
        auto & plan = manifest.plan;
        vector<vector<Embedding>> coordinate_copies;
        ProductColoring pulled{manifest.colors, {}, {}};
        size_t total = 1;
        for (auto & coord : plan.coordinates) {
            coordinate_copies.push_back(enumerate_copies(coord.pattern, coord.witness, manifest.mode));
            pulled.extents.push_back(coordinate_copies.back().size());
            total *= coordinate_copies.back().size();
        }
        pulled.values.assign(total, 0);

        // restrict chi to canonical copies and pull back through lambda^-1
        size_t filled = 0;
        for (size_t t = 0 ; t < chi.copies.size() ; ++t) {
            auto components = decompose_canonical_copy(manifest.joined, manifest.a, chi.copies[t], manifest.mode);
            if (! components)
                continue;
            size_t flat = 0;
            for (int i = 0 ; i < k ; ++i) {
                auto index = index_of_copy(coordinate_copies[i], (*components)[i]);
                if (! index)
                    throw Error("projection of a canonical copy is missing from its factor's copy list");
                flat = flat * pulled.extents[i] + *index;
            }
            pulled.values[flat] = chi.values[t];
            ++filled;
        }
        if (filled != total)
            throw Error("canonical copies do not match the product of the factor copy sets");

        auto product = extract_product_monochromatic(plan, pulled, threads);
        auto assembled = assemble_canonical_copy(manifest.joined, manifest.b, product.copies, manifest.mode);

        for (auto & sigma : copies_inside(assembled.assembled, manifest.a, manifest.b, manifest.mode)) {
            auto color = chi.color_of(sigma);
            if (! color || *color != product.color)
                throw NotMonochromatic("copy " + format_copy(sigma) + " inside the extracted copy does not have color "
                        + std::to_string(product.color));
        }

        return Extraction{std::move(assembled.assembled), product.color, std::move(product.copies)};
    }
}
