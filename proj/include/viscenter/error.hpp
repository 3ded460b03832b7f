#pragma once

#include <stdexcept>
#include <string>

namespace viscenter {

enum class ErrorKind {
    TooFewVertices,
    SelfIntersecting,
    DuplicateConsecutiveVertex,
    NonFiniteCoordinate,
    PointOutsidePolygon,
    DegenerateDirection,
    NotReflex,
    NotVisible,
    NoWindow,
    SingleTriangle,
    UnsortedInput,
    EmptyCover,
    ZeroRadius,
    EmptyConstraintSet,
    EmptySiteSet,
    InvalidChord,
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
    case ErrorKind::TooFewVertices: return "TooFewVertices";
    case ErrorKind::SelfIntersecting: return "SelfIntersecting";
    case ErrorKind::DuplicateConsecutiveVertex: return "DuplicateConsecutiveVertex";
    case ErrorKind::NonFiniteCoordinate: return "NonFiniteCoordinate";
    case ErrorKind::PointOutsidePolygon: return "PointOutsidePolygon";
    case ErrorKind::DegenerateDirection: return "DegenerateDirection";
    case ErrorKind::NotReflex: return "NotReflex";
    case ErrorKind::NotVisible: return "NotVisible";
    case ErrorKind::NoWindow: return "NoWindow";
    case ErrorKind::SingleTriangle: return "SingleTriangle";
    case ErrorKind::UnsortedInput: return "UnsortedInput";
    case ErrorKind::EmptyCover: return "EmptyCover";
    case ErrorKind::ZeroRadius: return "ZeroRadius";
    case ErrorKind::EmptyConstraintSet: return "EmptyConstraintSet";
    case ErrorKind::EmptySiteSet: return "EmptySiteSet";
    case ErrorKind::InvalidChord: return "InvalidChord";
    }
    return "Unknown";
}

// Carries the offending vertex/site/constraint index where one applies, else -1.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, long index = -1)
        : std::runtime_error(message(kind, index)), kind_(kind), index_(index) {}

    ErrorKind kind() const { return kind_; }
    long index() const { return index_; }

private:
    static std::string message(ErrorKind k, long index) {
        std::string s = to_string(k);
        if (index >= 0) s += " at index " + std::to_string(index);
        return s;
    }

    ErrorKind kind_;
    long index_;
};

}  // namespace viscenter
