#ifndef PATHDUAL_GUARD_PATHDUAL_ERRORS_HH
#define PATHDUAL_GUARD_PATHDUAL_ERRORS_HH 1

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pathdual
{
    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    class StructureError : public Error
    {
    public:
        using Error::Error;
    };

    class DecompositionError : public Error
    {
    public:
        using Error::Error;
    };

    class FormulaError : public Error
    {
    public:
        using Error::Error;
    };

    class ProgramError : public Error
    {
    public:
        using Error::Error;
    };

    class SentenceError : public Error
    {
    public:
        using Error::Error;
    };

    class GameError : public Error
    {
    public:
        using Error::Error;
    };

    class SolverError : public Error
    {
    public:
        using Error::Error;
    };

    class ParseError : public Error
    {
    public:
        ParseError(const std::string & message, std::size_t line, std::size_t column) :
            Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
            line(line),
            column(column)
        {
        }

        std::size_t line, column;
    };
}

#endif
