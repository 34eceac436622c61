#include <plram/errors.hh>
#include <plram/ramsey_engine.hh>

#include <algorithm>
#include <set>

using std::optional;
using std::size_t;
using std::string;
using std::uint64_t;
using std::vector;

namespace plram
{
    namespace
    {
        // Strict orders on 0..n-1 contained in the natural order: element b
        // gets a strict downset drawn from 0..b-1 that is closed downwards.
        auto natural_posets(int n) -> vector<StrictPoset>
        {
            vector<StrictPoset> result;
            StrictPoset current{n, vector<std::uint8_t>(static_cast<size_t>(n) * n, 0)};

            auto extend = [&] (auto & self, int b) -> void {
                if (b == n) {
                    result.push_back(current);
                    return;
                }
                for (unsigned long subset = 0 ; subset < (1ul << b) ; ++subset) {
                    bool closed = true;
                    for (int a = 0 ; a < b && closed ; ++a)
                        if (subset >> a & 1)
                            for (int c = 0 ; c < a && closed ; ++c)
                                if (current.below(c, a) && ! (subset >> c & 1))
                                    closed = false;
                    if (! closed)
                        continue;
                    for (int a = 0 ; a < b ; ++a)
                        current.relation[static_cast<size_t>(a) * n + b] = subset >> a & 1;
                    self(self, b + 1);
                }
                for (int a = 0 ; a < b ; ++a)
                    current.relation[static_cast<size_t>(a) * n + b] = 0;
            };
            extend(extend, 0);
            return result;
        }

        auto linear_extensions(const StrictPoset & poset) -> vector<LinearOrder>
        {
            int n = poset.size;
            vector<LinearOrder> result;
            vector<int> ascending;
            vector<bool> placed(n, false);

            auto extend = [&] (auto & self) -> void {
                if (static_cast<int>(ascending.size()) == n) {
                    result.push_back(linear_order_from_ascending(ascending));
                    return;
                }
                for (int e = 0 ; e < n ; ++e) {
                    if (placed[e])
                        continue;
                    bool minimal = true;
                    for (int a = 0 ; a < n && minimal ; ++a)
                        if (! placed[a] && poset.below(a, e))
                            minimal = false;
                    if (! minimal)
                        continue;
                    placed[e] = true;
                    ascending.push_back(e);
                    self(self);
                    ascending.pop_back();
                    placed[e] = false;
                }
            };
            extend(extend);
            return result;
        }
    }

    auto family_name(Family family) -> string
    {
        return family == Family::chains ? "chains" : "all";
    }

    auto parse_family(const string & text) -> optional<Family>
    {
        if (text == "chains")
            return Family::chains;
        if (text == "all")
            return Family::all;
        return std::nullopt;
    }

    auto canonical_encoding(const PLStructure & s) -> string
    {
        auto form = canonical_form(s).structure;
        string result;
        result.push_back(static_cast<char>(form.size()));
        result.push_back(static_cast<char>(form.arity()));
        for (auto bit : form.poset.relation)
            result.push_back(bit ? '1' : '0');
        for (auto & lin : form.lins)
            for (int e : lin.ascending())
                result.push_back(static_cast<char>(e));
        return result;
    }

    auto generate_candidates(int n, int k, Family family) -> vector<PLStructure>
    {
        if (n <= 0)
            throw EmptyStructure();
        if (k < 1)
            throw ArityMismatch("candidates need at least one linear order");
        if (family == Family::chains)
            return {chain(n, k)};

        std::set<string> seen;
        vector<std::pair<string, PLStructure>> found;
        for (auto & poset : natural_posets(n)) {
            auto extensions = linear_extensions(poset);
            vector<size_t> choice(k - 1, 0);
            while (true) {
                PLStructure s{poset, {identity_order(n)}};
                for (size_t c : choice)
                    s.lins.push_back(extensions[c]);
                auto form = canonical_form(s).structure;
                auto key = canonical_encoding(form);
                if (seen.insert(key).second)
                    found.emplace_back(std::move(key), std::move(form));

                size_t pos = 0;
                while (pos < choice.size() && ++choice[pos] == extensions.size())
                    choice[pos++] = 0;
                if (pos == choice.size())
                    break;
            }
        }

        std::sort(found.begin(), found.end(), [] (auto & a, auto & b) { return a.first < b.first; });
        vector<PLStructure> result;
        for (auto & [key, s] : found)
            result.push_back(std::move(s));
        return result;
    }

    auto find_witness(const PLStructure & pattern, const PLStructure & target, uint64_t colors,
            Mode mode, const WitnessSearchOptions & options) -> WitnessSearchResult
    {
        if (pattern.arity() != target.arity())
            throw ArityMismatch("pattern and target must have the same number of linear orders");

        WitnessSearchResult result;
        result.status = SearchStatus::not_found;
        int k = target.arity();
        for (int n = target.size() ; n <= options.max_n ; ++n) {
            result.largest_size_tried = n;
            for (auto & candidate : generate_candidates(n, k, options.family)) {
                if (count_copies(target, candidate, mode) == 0)
                    continue;
                ++result.candidates_checked;
                auto verdict = verify_witness(pattern, target, candidate, colors, mode, options.verify);
                result.nodes += verdict.nodes;
                if (verdict.status == VerifyStatus::unknown) {
                    result.status = SearchStatus::unknown;
                    return result;
                }
                if (verdict.status == VerifyStatus::ramsey) {
                    result.status = SearchStatus::found;
                    result.witness = candidate;
                    return result;
                }
            }
        }
        return result;
    }

    auto make_search_oracle(const WitnessSearchOptions & options) -> WitnessOracle
    {
        return [options] (const PLStructure & pattern, const PLStructure & target, uint64_t colors, Mode mode) {
            auto search = find_witness(pattern, target, colors, mode, options);
            if (search.status != SearchStatus::found)
                throw OracleFailure(string("no witness ") + (search.status == SearchStatus::unknown ?
                            "decided within the node budget" : "exists in the " + family_name(options.family) + " family up to size "
                            + std::to_string(options.max_n)) + " for " + std::to_string(colors) + " colors");
            return OracleAnswer{std::move(*search.witness), WitnessTag::verified};
        };
    }

    auto make_chain_oracle(const OracleOptions & options) -> WitnessOracle
    {
        auto search = make_search_oracle(options.fallback);
        return [options, search] (const PLStructure & pattern, const PLStructure & target, uint64_t colors, Mode mode) {
            if (colors == 1 || isomorphic(pattern, target))
                return OracleAnswer{target, WitnessTag::asserted};

            if (pattern.size() == 1 && is_chain(target)) {
                // pigeonhole: r(m-1)+1 points in a chain force m points of one color
                uint64_t m = static_cast<uint64_t>(target.size());
                if (colors > (static_cast<uint64_t>(options.max_chain) - 1) / std::max<uint64_t>(m - 1, 1))
                    throw OracleFailure("pigeonhole chain for " + std::to_string(colors) + " colors exceeds "
                            + std::to_string(options.max_chain) + " elements");
                return OracleAnswer{chain(static_cast<int>(colors * (m - 1) + 1), target.arity()), WitnessTag::asserted};
            }

            return search(pattern, target, colors, mode);
        };
    }
}
