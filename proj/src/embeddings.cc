#include <plram/embeddings.hh>
#include <plram/errors.hh>

#include <algorithm>
#include <cassert>
#include <sstream>

using std::optional;
using std::size_t;
using std::span;
using std::string;
using std::vector;

namespace plram
{
    namespace
    {
        auto check_arity(const PLStructure & pattern, const PLStructure & host) -> void
        {
            if (pattern.arity() != host.arity())
                throw ArityMismatch("pattern has " + std::to_string(pattern.arity()) + " linear orders, host has "
                        + std::to_string(host.arity()));
        }

        // Would mapping pattern elements a -> ha and b -> hb be consistent,
        // given a precedes b in the first order and ha precedes hb in the host's?
        auto pair_compatible(const PLStructure & pattern, const PLStructure & host, Mode mode,
                int a, int b, int ha, int hb) -> bool
        {
            for (int i = 1 ; i < pattern.arity() ; ++i)
                if (pattern.lins[i].precedes(a, b) != host.lins[i].precedes(ha, hb))
                    return false;

            bool pattern_below = pattern.poset.below(a, b);
            bool host_below = host.poset.below(ha, hb);
            if (mode == Mode::strong)
                return pattern_below == host_below;
            return ! pattern_below || host_below;
        }

        struct CopySearch
        {
            const PLStructure & pattern;
            const PLStructure & host;
            Mode mode;
            vector<int> pattern_ascending;
            vector<int> image;
            vector<Embedding> found;
            bool count_only = false;
            size_t count = 0;

            auto extend(int depth) -> void
            {
                int m = pattern.size();
                if (depth == m) {
                    ++count;
                    if (! count_only)
                        found.push_back(Embedding{image});
                    return;
                }

                auto & host_first = host.lins[0].rank;
                int n = host.size();
                int floor = depth == 0 ? -1 : host_first[image[depth - 1]];
                int remaining = m - depth;
                int b = pattern_ascending[depth];

                // host indices ascending, so the emitted image lists come out sorted
                for (int h = 0 ; h < n ; ++h) {
                    int r = host_first[h];
                    if (r <= floor || n - r < remaining)
                        continue;
                    bool ok = true;
                    for (int t = 0 ; t < depth && ok ; ++t)
                        ok = pair_compatible(pattern, host, mode, pattern_ascending[t], b, image[t], h);
                    if (! ok)
                        continue;
                    image[depth] = h;
                    extend(depth + 1);
                }
            }
        };

        auto run_search(const PLStructure & pattern, const PLStructure & host, Mode mode, bool count_only) -> CopySearch
        {
            check_arity(pattern, host);
            if (pattern.size() <= 0 || host.size() <= 0)
                throw EmptyStructure();
            CopySearch search{pattern, host, mode, pattern.lins[0].ascending(), vector<int>(pattern.size()), {}, count_only};
            if (pattern.size() <= host.size())
                search.extend(0);
            return search;
        }
    }

    auto mode_name(Mode mode) -> string
    {
        return mode == Mode::strong ? "strong" : "weak";
    }

    auto parse_mode(const string & text) -> optional<Mode>
    {
        if (text == "strong")
            return Mode::strong;
        if (text == "weak")
            return Mode::weak;
        return std::nullopt;
    }

    auto check_embedding(const Embedding & map, const PLStructure & pattern, const PLStructure & host, Mode mode) -> bool
    {
        check_arity(pattern, host);
        int m = pattern.size();
        if (map.pattern_size() != m)
            throw SizeMismatch("embedding has " + std::to_string(map.pattern_size()) + " entries, pattern has "
                    + std::to_string(m) + " elements");
        for (int h : map.image)
            if (h < 0 || h >= host.size())
                throw IndexError("embedding image " + std::to_string(h) + " outside host");

        auto f = element_map(map, pattern);
        for (int a = 0 ; a < m ; ++a)
            for (int b = 0 ; b < m ; ++b) {
                if (a == b)
                    continue;
                if (f[a] == f[b])
                    return false;
                if (pattern.lins[0].precedes(a, b) != host.lins[0].precedes(f[a], f[b]))
                    return false;
                if (pattern.lins[0].precedes(a, b) && ! pair_compatible(pattern, host, mode, a, b, f[a], f[b]))
                    return false;
            }
        return true;
    }

    auto enumerate_copies(const PLStructure & pattern, const PLStructure & host, Mode mode) -> vector<Embedding>
    {
        return run_search(pattern, host, mode, false).found;
    }

    auto count_copies(const PLStructure & pattern, const PLStructure & host, Mode mode) -> size_t
    {
        return run_search(pattern, host, mode, true).count;
    }

    auto copy_from_subset(span<const int> subset, const PLStructure & pattern, const PLStructure & host, Mode mode) -> optional<Embedding>
    {
        if (static_cast<int>(subset.size()) != pattern.size())
            throw SizeMismatch("subset has " + std::to_string(subset.size()) + " elements, pattern has "
                    + std::to_string(pattern.size()));
        for (int h : subset)
            if (h < 0 || h >= host.size())
                throw IndexError("subset member " + std::to_string(h) + " outside host");

        Embedding candidate{vector<int>(subset.begin(), subset.end())};
        std::sort(candidate.image.begin(), candidate.image.end(),
                [&] (int a, int b) { return host.lins[0].precedes(a, b); });
        if (check_embedding(candidate, pattern, host, mode))
            return candidate;
        return std::nullopt;
    }

    auto compose_embeddings(const Embedding & outer, const Embedding & inner, const PLStructure & middle) -> Embedding
    {
        if (outer.pattern_size() != middle.size())
            throw ShapeMismatch("outer embedding has " + std::to_string(outer.pattern_size())
                    + " entries but the middle structure has " + std::to_string(middle.size()) + " elements");
        Embedding result{vector<int>(inner.image.size())};
        for (size_t j = 0 ; j < inner.image.size() ; ++j) {
            int y = inner.image[j];
            if (y < 0 || y >= middle.size())
                throw ShapeMismatch("inner embedding image " + std::to_string(y) + " outside the middle structure");
            result.image[j] = outer.image[middle.lins[0].rank[y]];
        }
        return result;
    }

    auto compose_embeddings(const Embedding & outer, const Embedding & inner, const PLStructure & pattern,
            const PLStructure & middle, const PLStructure & host, Mode mode) -> Embedding
    {
        auto result = compose_embeddings(outer, inner, middle);
        assert(check_embedding(result, pattern, host, mode));
        (void) pattern;
        (void) host;
        (void) mode;
        return result;
    }

    auto element_map(const Embedding & e, const PLStructure & pattern) -> vector<int>
    {
        if (e.pattern_size() != pattern.size())
            throw SizeMismatch("embedding has " + std::to_string(e.pattern_size()) + " entries, pattern has "
                    + std::to_string(pattern.size()) + " elements");
        vector<int> result(pattern.size());
        for (int x = 0 ; x < pattern.size() ; ++x)
            result[x] = e.image[pattern.lins[0].rank[x]];
        return result;
    }

    auto embedding_from_map(span<const int> map, const PLStructure & pattern) -> Embedding
    {
        if (static_cast<int>(map.size()) != pattern.size())
            throw SizeMismatch("map has " + std::to_string(map.size()) + " entries, pattern has "
                    + std::to_string(pattern.size()) + " elements");
        Embedding result{vector<int>(map.size())};
        for (int x = 0 ; x < pattern.size() ; ++x)
            result.image[pattern.lins[0].rank[x]] = map[x];
        return result;
    }

    auto identity_embedding(const PLStructure & s) -> Embedding
    {
        return Embedding{s.lins.at(0).ascending()};
    }

    auto index_of_copy(span<const Embedding> sorted_copies, const Embedding & e) -> optional<size_t>
    {
        auto it = std::lower_bound(sorted_copies.begin(), sorted_copies.end(), e);
        if (it == sorted_copies.end() || *it != e)
            return std::nullopt;
        return static_cast<size_t>(it - sorted_copies.begin());
    }

    auto format_copy(const Embedding & e) -> string
    {
        string result;
        for (int h : e.image) {
            if (! result.empty())
                result += ' ';
            result += std::to_string(h);
        }
        return result;
    }

    auto parse_copy(const string & text) -> Embedding
    {
        std::istringstream in(text);
        Embedding result;
        string token;
        while (in >> token) {
            size_t used = 0;
            int value = -1;
            try {
                value = std::stoi(token, &used);
            }
            catch (const std::exception &) {
                used = 0;
            }
            if (used != token.size() || value < 0)
                throw IndexError("bad host index '" + token + "' in copy");
            result.image.push_back(value);
        }
        return result;
    }
}
