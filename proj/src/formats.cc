#include <plram/errors.hh>
#include <plram/formats.hh>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

using std::size_t;
using std::string;
using std::uint64_t;
using std::vector;

namespace fs = std::filesystem;

namespace plram
{
    namespace
    {
        struct Line
        {
            int number;
            vector<string> tokens;
        };

        auto tokenize(const string & text) -> vector<Line>
        {
            vector<Line> result;
            std::istringstream in(text);
            string raw;
            int number = 0;
            while (std::getline(in, raw)) {
                ++number;
                if (auto hash = raw.find('#') ; hash != string::npos)
                    raw.erase(hash);
                std::istringstream words(raw);
                Line line{number, {}};
                string word;
                while (words >> word)
                    line.tokens.push_back(word);
                if (! line.tokens.empty())
                    result.push_back(std::move(line));
            }
            return result;
        }

        auto to_integer(const string & token, const string & file, int line, long long lo, long long hi) -> long long
        {
            long long value = 0;
            size_t used = 0;
            try {
                value = std::stoll(token, &used);
            }
            catch (const std::exception &) {
                used = 0;
            }
            if (used != token.size() || token.empty())
                throw ParseError(file, line, "expected an integer, found '" + token + "'");
            if (value < lo || value > hi)
                throw ParseError(file, line, "value " + token + " out of range");
            return value;
        }

        auto to_unsigned(const string & token, const string & file, int line) -> uint64_t
        {
            if (token.empty() || token.find_first_not_of("0123456789") != string::npos)
                throw ParseError(file, line, "expected a non-negative integer, found '" + token + "'");
            try {
                return std::stoull(token);
            }
            catch (const std::exception &) {
                throw ParseError(file, line, "value " + token + " out of range");
            }
        }

        auto expect_header(const vector<Line> & lines, const string & file, const string & magic) -> void
        {
            if (lines.empty())
                throw ParseError(file, 1, "empty file, expected '" + magic + " 1'");
            auto & first = lines.front();
            if (first.tokens.size() != 2 || first.tokens[0] != magic || first.tokens[1] != "1")
                throw ParseError(file, first.number, "expected header '" + magic + " 1'");
        }

        auto expect_arity(const Line & line, size_t count, const string & file) -> void
        {
            if (line.tokens.size() != count)
                throw ParseError(file, line.number, "'" + line.tokens[0] + "' expects " + std::to_string(count - 1) + " values");
        }

        auto relative_to(const string & base, const string & name) -> string
        {
            fs::path p(name);
            if (p.is_absolute())
                return name;
            return (fs::path(base).parent_path() / p).string();
        }
    }

    auto parse_raw_structure(const string & text, const string & file) -> RawStructure
    {
        auto lines = tokenize(text);
        expect_header(lines, file, "PLS");

        RawStructure raw;
        bool have_n = false, have_k = false;
        vector<bool> seen_lin;
        for (size_t l = 1 ; l < lines.size() ; ++l) {
            auto & line = lines[l];
            auto & key = line.tokens[0];
            if (key == "n") {
                expect_arity(line, 2, file);
                if (have_n)
                    throw ParseError(file, line.number, "duplicate 'n'");
                raw.n = static_cast<int>(to_integer(line.tokens[1], file, line.number, 0, 1 << 20));
                if (raw.n == 0)
                    throw ParseError(file, line.number, "structures must have at least one element");
                have_n = true;
            }
            else if (key == "k") {
                expect_arity(line, 2, file);
                if (have_k)
                    throw ParseError(file, line.number, "duplicate 'k'");
                raw.k = static_cast<int>(to_integer(line.tokens[1], file, line.number, 1, 1 << 10));
                raw.lins.assign(raw.k, {});
                seen_lin.assign(raw.k, false);
                have_k = true;
            }
            else if (key == "rel") {
                if (! have_n)
                    throw ParseError(file, line.number, "'rel' before 'n'");
                expect_arity(line, 3, file);
                int a = static_cast<int>(to_integer(line.tokens[1], file, line.number, 0, raw.n - 1));
                int b = static_cast<int>(to_integer(line.tokens[2], file, line.number, 0, raw.n - 1));
                raw.relations.emplace_back(a, b);
            }
            else if (key == "lin") {
                if (! have_n || ! have_k)
                    throw ParseError(file, line.number, "'lin' before 'n' and 'k'");
                expect_arity(line, static_cast<size_t>(raw.n) + 2, file);
                int i = static_cast<int>(to_integer(line.tokens[1], file, line.number, 1, raw.k));
                if (seen_lin[i - 1])
                    throw ParseError(file, line.number, "duplicate linear order " + std::to_string(i));
                seen_lin[i - 1] = true;
                vector<bool> listed(raw.n, false);
                for (size_t t = 2 ; t < line.tokens.size() ; ++t) {
                    int e = static_cast<int>(to_integer(line.tokens[t], file, line.number, 0, raw.n - 1));
                    if (listed[e])
                        throw ParseError(file, line.number, "element " + std::to_string(e) + " listed twice in linear order "
                                + std::to_string(i));
                    listed[e] = true;
                    raw.lins[i - 1].push_back(e);
                }
            }
            else
                throw ParseError(file, line.number, "unknown keyword '" + key + "'");
        }

        int last = lines.back().number;
        if (! have_n)
            throw ParseError(file, last, "missing 'n'");
        if (! have_k)
            throw ParseError(file, last, "missing 'k'");
        for (int i = 0 ; i < raw.k ; ++i)
            if (! seen_lin[i])
                throw ParseError(file, last, "missing linear order " + std::to_string(i + 1));
        return raw;
    }

    auto build_structure(const RawStructure & raw, const string & file) -> PLStructure
    {
        StrictPoset poset;
        try {
            poset = transitive_closure_strict(raw.n, raw.relations);
        }
        catch (const CycleError & e) {
            throw ParseError(file, 0, e.what());
        }
        vector<LinearOrder> lins;
        for (auto & asc : raw.lins)
            lins.push_back(linear_order_from_ascending(asc));
        PLStructure s{std::move(poset), std::move(lins)};
        auto report = validate_structure(s);
        if (! report.ok())
            throw ParseError(file, 0, report.describe());
        return s;
    }

    auto parse_structure(const string & text, const string & file) -> PLStructure
    {
        return build_structure(parse_raw_structure(text, file), file);
    }

    auto serialize_structure(const PLStructure & s, const vector<string> & comments) -> string
    {
        std::ostringstream out;
        out << "PLS 1\n";
        for (auto & c : comments)
            out << "# " << c << '\n';
        out << "n " << s.size() << '\n';
        out << "k " << s.arity() << '\n';
        for (auto & [a, b] : transitive_reduction(s.poset))
            out << "rel " << a << ' ' << b << '\n';
        for (int i = 0 ; i < s.arity() ; ++i) {
            out << "lin " << (i + 1);
            for (int e : s.lins[i].ascending())
                out << ' ' << e;
            out << '\n';
        }
        return out.str();
    }

    auto join_comments(const JoinedStructure & js) -> vector<string>
    {
        string sizes;
        for (auto & f : js.factors)
            sizes += " " + std::to_string(f.size());
        return {
            "join of " + std::to_string(js.arity()) + " factors, sizes" + sizes,
            "element (z_1, ..., z_k) has index sum_i z_i * prod_{j>i} n_j",
            "linear order i compares coordinates i, i+1, ..., k, 1, ..., i-1"
        };
    }

    auto serialize_coloring(const CopyColoring & chi) -> string
    {
        std::ostringstream out;
        out << "COL 1\n";
        out << "r " << chi.colors << '\n';
        for (size_t t = 0 ; t < chi.copies.size() ; ++t)
            out << "c " << format_copy(chi.copies[t]) << " : " << chi.values[t] << '\n';
        return out.str();
    }

    auto parse_coloring(const string & text, const string & file, const PLStructure & pattern,
            const PLStructure & host, Mode mode) -> CopyColoring
    {
        auto lines = tokenize(text);
        expect_header(lines, file, "COL");

        CopyColoring chi{0, enumerate_copies(pattern, host, mode), {}};
        vector<bool> assigned(chi.copies.size(), false);
        chi.values.assign(chi.copies.size(), 0);
        bool have_r = false;
        for (size_t l = 1 ; l < lines.size() ; ++l) {
            auto & line = lines[l];
            auto & key = line.tokens[0];
            if (key == "r") {
                expect_arity(line, 2, file);
                if (have_r)
                    throw ParseError(file, line.number, "duplicate 'r'");
                chi.colors = to_unsigned(line.tokens[1], file, line.number);
                if (chi.colors == 0)
                    throw ParseError(file, line.number, "at least one color is required");
                have_r = true;
            }
            else if (key == "c") {
                if (! have_r)
                    throw ParseError(file, line.number, "'c' before 'r'");
                auto colon = std::find(line.tokens.begin(), line.tokens.end(), ":");
                if (colon == line.tokens.end() || colon + 2 != line.tokens.end())
                    throw ParseError(file, line.number, "expected 'c <indices> : <color>'");
                Embedding copy;
                for (auto it = line.tokens.begin() + 1 ; it != colon ; ++it)
                    copy.image.push_back(static_cast<int>(to_integer(*it, file, line.number, 0, host.size() - 1)));
                auto color = to_unsigned(*(colon + 1), file, line.number);
                if (color >= chi.colors)
                    throw ParseError(file, line.number, "color " + std::to_string(color) + " outside 0.." + std::to_string(chi.colors - 1));
                auto index = index_of_copy(chi.copies, copy);
                if (! index)
                    throw ParseError(file, line.number, "'" + format_copy(copy) + "' is not a copy of the pattern in the host");
                if (assigned[*index])
                    throw ParseError(file, line.number, "copy '" + format_copy(copy) + "' colored twice");
                assigned[*index] = true;
                chi.values[*index] = color;
            }
            else
                throw ParseError(file, line.number, "unknown keyword '" + key + "'");
        }

        int last = lines.back().number;
        if (! have_r)
            throw ParseError(file, last, "missing 'r'");
        for (size_t t = 0 ; t < chi.copies.size() ; ++t)
            if (! assigned[t])
                throw ParseError(file, last, "copy '" + format_copy(chi.copies[t]) + "' has no color");
        return chi;
    }

    auto serialize_manifest(const ManifestFile & m) -> string
    {
        std::ostringstream out;
        out << "MAIN 1\n";
        out << "k " << m.k << '\n';
        out << "mode " << mode_name(m.mode) << '\n';
        out << "r " << m.colors << '\n';
        out << "a " << m.a << '\n';
        out << "b " << m.b << '\n';
        for (size_t i = 0 ; i < m.z.size() ; ++i)
            out << "z " << (i + 1) << ' ' << m.z[i] << '\n';
        out << "c " << m.c << '\n';
        return out.str();
    }

    auto parse_manifest(const string & text, const string & file) -> ManifestFile
    {
        auto lines = tokenize(text);
        expect_header(lines, file, "MAIN");

        ManifestFile m;
        bool have_k = false, have_mode = false, have_r = false;
        vector<bool> seen_z;
        for (size_t l = 1 ; l < lines.size() ; ++l) {
            auto & line = lines[l];
            auto & key = line.tokens[0];
            if (key == "k") {
                expect_arity(line, 2, file);
                m.k = static_cast<int>(to_integer(line.tokens[1], file, line.number, 1, 1 << 10));
                m.z.assign(m.k, {});
                seen_z.assign(m.k, false);
                have_k = true;
            }
            else if (key == "mode") {
                expect_arity(line, 2, file);
                auto mode = parse_mode(line.tokens[1]);
                if (! mode)
                    throw ParseError(file, line.number, "mode must be 'strong' or 'weak'");
                m.mode = *mode;
                have_mode = true;
            }
            else if (key == "r") {
                expect_arity(line, 2, file);
                m.colors = to_unsigned(line.tokens[1], file, line.number);
                if (m.colors == 0)
                    throw ParseError(file, line.number, "at least one color is required");
                have_r = true;
            }
            else if (key == "a" || key == "b" || key == "c") {
                expect_arity(line, 2, file);
                (key == "a" ? m.a : key == "b" ? m.b : m.c) = line.tokens[1];
            }
            else if (key == "z") {
                if (! have_k)
                    throw ParseError(file, line.number, "'z' before 'k'");
                expect_arity(line, 3, file);
                int i = static_cast<int>(to_integer(line.tokens[1], file, line.number, 1, m.k));
                if (seen_z[i - 1])
                    throw ParseError(file, line.number, "duplicate witness " + std::to_string(i));
                seen_z[i - 1] = true;
                m.z[i - 1] = line.tokens[2];
            }
            else
                throw ParseError(file, line.number, "unknown keyword '" + key + "'");
        }

        int last = lines.back().number;
        if (! have_k || ! have_mode || ! have_r)
            throw ParseError(file, last, "manifest needs 'k', 'mode' and 'r'");
        if (m.a.empty() || m.b.empty() || m.c.empty())
            throw ParseError(file, last, "manifest needs paths 'a', 'b' and 'c'");
        for (int i = 0 ; i < m.k ; ++i)
            if (! seen_z[i])
                throw ParseError(file, last, "missing witness " + std::to_string(i + 1));
        return m;
    }

    auto save_manifest(const ConstructionManifest & manifest, const string & path) -> void
    {
        fs::path p(path);
        string stem = p.stem().string();
        auto sibling = [&] (const string & suffix) { return (p.parent_path() / (stem + suffix)).string(); };

        ManifestFile m;
        m.k = manifest.arity();
        m.mode = manifest.mode;
        m.colors = manifest.colors;
        m.a = stem + ".a.pls";
        m.b = stem + ".b.pls";
        m.c = stem + ".c.pls";
        write_text_file(sibling(".a.pls"), serialize_structure(manifest.a));
        write_text_file(sibling(".b.pls"), serialize_structure(manifest.b));
        for (int i = 0 ; i < m.k ; ++i) {
            auto & coord = manifest.plan.coordinates[i];
            m.z.push_back(stem + ".z" + std::to_string(i + 1) + ".pls");
            write_text_file(sibling(".z" + std::to_string(i + 1) + ".pls"), serialize_structure(coord.witness, {
                        "witness " + std::to_string(i + 1) + " (" + tag_name(coord.tag) + ") for "
                        + std::to_string(coord.colors) + " colors"}));
        }
        write_text_file(sibling(".c.pls"), serialize_structure(manifest.joined.product, join_comments(manifest.joined)));
        write_text_file(path, serialize_manifest(m));
    }

    auto load_manifest(const string & path) -> ConstructionManifest
    {
        auto m = parse_manifest(read_text_file(path), path);
        auto a = read_structure_file(relative_to(path, m.a));
        auto b = read_structure_file(relative_to(path, m.b));
        if (a.arity() != m.k || b.arity() != m.k)
            throw ParseError(path, 0, "A and B must have k = " + std::to_string(m.k) + " linear orders");
        vector<PLStructure> witnesses;
        for (auto & z : m.z)
            witnesses.push_back(read_structure_file(relative_to(path, z)));
        auto stored = read_structure_file(relative_to(path, m.c));

        auto manifest = manifest_from_witnesses(a, b, witnesses, m.colors, m.mode);
        if (manifest.joined.product != stored)
            throw ParseError(path, 0, "stored host " + m.c + " differs from the join of the witnesses");
        return manifest;
    }

    auto serialize_copy_file(const Embedding & copy, Color color) -> string
    {
        return "COPY 1\ncopy " + format_copy(copy) + "\ncolor " + std::to_string(color) + "\n";
    }

    auto parse_copy_file(const string & text, const string & file) -> std::pair<Embedding, Color>
    {
        auto lines = tokenize(text);
        expect_header(lines, file, "COPY");
        std::pair<Embedding, Color> result;
        bool have_copy = false, have_color = false;
        for (size_t l = 1 ; l < lines.size() ; ++l) {
            auto & line = lines[l];
            if (line.tokens[0] == "copy") {
                for (size_t t = 1 ; t < line.tokens.size() ; ++t)
                    result.first.image.push_back(static_cast<int>(to_integer(line.tokens[t], file, line.number, 0,
                                    std::numeric_limits<int>::max())));
                have_copy = true;
            }
            else if (line.tokens[0] == "color") {
                expect_arity(line, 2, file);
                result.second = to_unsigned(line.tokens[1], file, line.number);
                have_color = true;
            }
            else
                throw ParseError(file, line.number, "unknown keyword '" + line.tokens[0] + "'");
        }
        if (! have_copy || ! have_color)
            throw ParseError(file, lines.back().number, "copy file needs 'copy' and 'color'");
        return result;
    }

    auto read_text_file(const string & path) -> string
    {
        std::ifstream in(path, std::ios::binary);
        if (! in)
            throw Error("cannot read " + path);
        std::ostringstream content;
        content << in.rdbuf();
        return content.str();
    }

    auto write_text_file(const string & path, const string & content) -> void
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (! out)
            throw Error("cannot write " + path);
        out << content;
        if (! out)
            throw Error("failed writing " + path);
    }

    auto read_structure_file(const string & path) -> PLStructure
    {
        return parse_structure(read_text_file(path), path);
    }
}
