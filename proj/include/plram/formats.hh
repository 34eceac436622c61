#pragma once

#include <plram/embeddings.hh>
#include <plram/join.hh>
#include <plram/orders.hh>
#include <plram/ramsey_engine.hh>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace plram
{
    /// Structure file contents before closure and validation.
    struct RawStructure
    {
        int n = 0;
        int k = 0;
        std::vector<std::pair<int, int>> relations;
        /// lins[i] lists the elements of order i+1 ascending.
        std::vector<std::vector<int>> lins;
    };

    /// Syntax only. Text format:
    ///
    ///     PLS 1
    ///     n <int>
    ///     k <int>
    ///     rel <a> <b>                 (zero or more)
    ///     lin <i> <e_0> ... <e_{n-1}> (i = 1..k, ascending)
    ///
    /// '#' starts a comment and blank lines are ignored.
    auto parse_raw_structure(const std::string & text, const std::string & file) -> RawStructure;

    /// Closure plus validation; failures become ParseError naming `file`.
    auto build_structure(const RawStructure & raw, const std::string & file) -> PLStructure;

    auto parse_structure(const std::string & text, const std::string & file = "<input>") -> PLStructure;

    /// Canonical text: covering pairs sorted, orders in index order. Each
    /// comment line is written after the header with a "# " prefix.
    auto serialize_structure(const PLStructure & s, const std::vector<std::string> & comments = {}) -> std::string;

    /// Records factor sizes and the flat index convention of a join.
    auto join_comments(const JoinedStructure & js) -> std::vector<std::string>;

    /// "COL 1", "r <int>", then one "c <indices> : <color>" line per copy.
    auto serialize_coloring(const CopyColoring & chi) -> std::string;

    /// Checks that the lines cover enumerate_copies(pattern, host, mode) exactly once.
    auto parse_coloring(const std::string & text, const std::string & file, const PLStructure & pattern,
            const PLStructure & host, Mode mode) -> CopyColoring;

    struct ManifestFile
    {
        int k = 0;
        Mode mode = Mode::strong;
        std::uint64_t colors = 0;
        std::string a;
        std::string b;
        std::vector<std::string> z;
        std::string c;
    };

    auto serialize_manifest(const ManifestFile & m) -> std::string;
    auto parse_manifest(const std::string & text, const std::string & file) -> ManifestFile;

    /// Writes <stem>.a.pls, <stem>.b.pls, <stem>.z<i>.pls, <stem>.c.pls next to
    /// `path` and the manifest itself at `path`.
    auto save_manifest(const ConstructionManifest & manifest, const std::string & path) -> void;

    /// Reads a manifest and the files it names (relative to its directory),
    /// recomputes every derived quantity and checks the stored host.
    auto load_manifest(const std::string & path) -> ConstructionManifest;

    /// "COPY 1", "copy <indices>", "color <int>".
    auto serialize_copy_file(const Embedding & copy, Color color) -> std::string;
    auto parse_copy_file(const std::string & text, const std::string & file) -> std::pair<Embedding, Color>;

    auto read_text_file(const std::string & path) -> std::string;
    auto write_text_file(const std::string & path, const std::string & content) -> void;
    auto read_structure_file(const std::string & path) -> PLStructure;
}
