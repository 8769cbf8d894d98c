#pragma once

#include <stdexcept>
#include <string>

namespace floorloop {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// --- geometry ---
struct DegenerateQuad : Error { using Error::Error; };
struct SingularSystem : Error { using Error::Error; };
struct SingularMatrix : Error { using Error::Error; };
struct PointAtInfinity : Error { using Error::Error; };

// --- images / descriptors ---
struct ImageTooSmall : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct EmptyMatrix : Error { using Error::Error; };
struct MissingId : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

// --- back projection / registration ---
struct NonPositiveDepth : Error { using Error::Error; };
struct CountMismatch : Error { using Error::Error; };
struct RayParallelToFloor : Error { using Error::Error; };
struct IntersectionBehindCamera : Error { using Error::Error; };
struct DegenerateConfiguration : Error { using Error::Error; };
struct TooFewPoints : Error { using Error::Error; };
struct NonPlanarResidual : Error { using Error::Error; };

// --- pose graph ---
struct NotConnected : Error { using Error::Error; };
struct SingularNormalEquations : Error { using Error::Error; };
struct UnknownTag : Error { using Error::Error; };

// --- evaluation / io / pipeline ---
struct UnknownId : Error { using Error::Error; };
struct TooFewCommonIds : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };
struct NoFloorVisible : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };
struct MissingUpstreamArtifact : Error { using Error::Error; };

}  // namespace floorloop
