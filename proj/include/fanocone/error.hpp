#ifndef FANOCONE_ERROR_HPP
#define FANOCONE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace fanocone {

/**
 * Machine-readable failure categories. The CLI maps every one of these to
 * exit code 2 except Internal, which maps to exit code 1.
 */
enum class ErrorCode
{
    InvalidInput,
    NotPointed,
    NotFullDim,
    TooLarge,
    NotQGorenstein,
    NotKlt,
    NotInReebCone,
    RoundingExitsCone,
    DegenerateXi,
    TruncationTooSmall,
    ExtrapolationDiverged,
    NotPrimary,
    Internal
};

inline const char* to_string(ErrorCode code)
{
    switch (code)
    {
        case ErrorCode::InvalidInput:          return "InvalidInput";
        case ErrorCode::NotPointed:            return "NotPointed";
        case ErrorCode::NotFullDim:            return "NotFullDim";
        case ErrorCode::TooLarge:              return "TooLarge";
        case ErrorCode::NotQGorenstein:        return "NotQGorenstein";
        case ErrorCode::NotKlt:                return "NotKlt";
        case ErrorCode::NotInReebCone:         return "NotInReebCone";
        case ErrorCode::RoundingExitsCone:     return "RoundingExitsCone";
        case ErrorCode::DegenerateXi:          return "DegenerateXi";
        case ErrorCode::TruncationTooSmall:    return "TruncationTooSmall";
        case ErrorCode::ExtrapolationDiverged: return "ExtrapolationDiverged";
        case ErrorCode::NotPrimary:            return "NotPrimary";
        case ErrorCode::Internal:              return "Internal";
    }
    return "Internal";
}

class Error : public std::runtime_error
{
    private:
        ErrorCode code_;

    public:
        Error(ErrorCode code, const std::string& detail)
            : std::runtime_error(detail), code_(code)
        {
        }

        ErrorCode code() const noexcept { return code_; }
};

}   // namespace fanocone

#endif
