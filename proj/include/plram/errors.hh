#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace plram
{
    /// Base of every error raised by the library.
    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    /// Generator pairs whose transitive closure would make some element below itself.
    class CycleError : public Error
    {
    public:
        CycleError(std::vector<int> cycle, const std::string & message) :
            Error(message),
            cycle(std::move(cycle))
        {
        }

        /// Elements of one offending cycle, first element repeated at the end.
        std::vector<int> cycle;
    };

    class IndexError : public Error
    {
    public:
        using Error::Error;
    };

    /// Structures on zero elements are rejected everywhere.
    class EmptyStructure : public Error
    {
    public:
        EmptyStructure() :
            Error("structures must have at least one element")
        {
        }
    };

    /// Structures carry a different number of linear orders than required.
    class ArityMismatch : public Error
    {
    public:
        using Error::Error;
    };

    class SizeMismatch : public Error
    {
    public:
        using Error::Error;
    };

    class ShapeMismatch : public Error
    {
    public:
        using Error::Error;
    };

    /// A structure that fails validation where a valid one is required.
    class InvalidStructure : public Error
    {
    public:
        using Error::Error;
    };

    /// Component `index` (zero based) of a canonical copy does not embed into its factor.
    class InvalidComponent : public Error
    {
    public:
        InvalidComponent(int index, const std::string & message) :
            Error(message),
            index(index)
        {
        }

        int index;
    };

    class OracleFailure : public Error
    {
    public:
        using Error::Error;
    };

    class Overflow : public Error
    {
    public:
        using Error::Error;
    };

    /// An extraction could not find a monochromatic copy, so the witnesses were not Ramsey.
    class NotMonochromatic : public Error
    {
    public:
        using Error::Error;
    };

    /// line is one based; 0 when the problem concerns the whole file.
    class ParseError : public Error
    {
    public:
        ParseError(std::string file, int line, std::string reason) :
            Error(file + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + reason),
            file(std::move(file)),
            line(line),
            reason(std::move(reason))
        {
        }

        std::string file;
        int line;
        std::string reason;
    };
}
