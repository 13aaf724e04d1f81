#pragma once

#include "fvbeam/solver.hpp"

#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fvbeam {

/// Angles given in degrees in case files are converted with this factor.
inline constexpr double kRadiansPerDegree = std::numbers::pi / 180.0;

bool operator==(const BoundarySpec& a, const BoundarySpec& b);
bool operator==(const Monitor& a, const Monitor& b);
bool operator==(const ScheduleStage& a, const ScheduleStage& b);
bool operator==(const SolverSettings& a, const SolverSettings& b);

/// Schema violation in a case file: a missing or mistyped field, an unknown
/// key, or malformed JSON. Carries the JSON pointer of the offending field
/// and its 1-based line in the source text (0 when unknown).
class SchemaError : public std::runtime_error {
public:
    SchemaError(std::string path, std::size_t line, const std::string& message);
    const std::string& path() const { return path_; }
    std::size_t line() const { return line_; }

private:
    std::string path_;
    std::size_t line_;
};

struct GeometryDef {
    enum class Kind { Straight, Arc };
    Kind kind = Kind::Straight;
    double length = 1.0;      ///< straight only
    double radius = 1.0;      ///< arc only
    double span = 0.0;        ///< rad
    double start_angle = 0.0; ///< rad
    bool clockwise = false;
    Vec3 centre = Vec3::Zero();
    std::string plane = "xy"; ///< "xy", "yz" or "zx": the arc lies in span(u, v)

    ArcSpec arc() const;
    double beam_length() const;
    bool operator==(const GeometryDef&) const = default;
};

struct SectionDef {
    enum class Shape { Circle, Rectangle };
    Shape shape = Shape::Circle;
    double radius = 0.0;
    double width = 0.0;
    double height = 0.0;
    TorsionModel torsion = TorsionModel::Polar;

    Section section() const;
    bool operator==(const SectionDef&) const = default;
};

/// Either the six stiffness products directly or E, G and a section.
struct MaterialDef {
    bool from_section = false;
    double EA = 0.0, GA2 = 0.0, GA3 = 0.0, GJ = 0.0, EI2 = 0.0, EI3 = 0.0;
    double E = 0.0, G = 0.0;
    SectionDef section;

    Material material() const;
    bool operator==(const MaterialDef&) const = default;
};

/// Concentrated load at arc length `s` (or at the crown of an arc). It is
/// lumped into the containing cell as a distributed load P / L_C, or split
/// equally between the two cells when it sits on an interior face.
struct PointLoad {
    bool at_crown = false;
    double s = 0.0;
    Vec3 force = Vec3::Zero();
    Vec3 torque = Vec3::Zero();
    bool operator==(const PointLoad&) const = default;
};

struct LoadsDef {
    Vec3 distributed_force = Vec3::Zero();  ///< N/m, uniform
    Vec3 distributed_torque = Vec3::Zero(); ///< N, uniform
    std::vector<PointLoad> points;
    bool operator==(const LoadsDef&) const = default;
};

struct OutputDef {
    std::vector<Monitor> monitors{Monitor{}};
    std::size_t write_every = 1;
    bool operator==(const OutputDef&) const = default;
};

/// Reference values of the first monitor used by the convergence command
/// (analytic solutions). Components are compared by magnitude.
struct ReferenceDef {
    std::optional<Vec3> displacement;
    std::optional<Vec3> force;
    bool operator==(const ReferenceDef&) const = default;
};

/// One case file. All boundary targets, boundary loads and applied loads
/// are reference values multiplied by the load factor of the schedule.
struct CaseDefinition {
    std::string name;
    GeometryDef geometry;
    MaterialDef material;
    std::size_t cells = 10;
    std::array<BoundarySpec, 2> boundaries;
    LoadsDef loads;
    std::vector<ScheduleStage> schedule{ScheduleStage{}};
    SolverSettings solver;
    OutputDef output;
    ReferenceDef reference;

    bool operator==(const CaseDefinition&) const = default;
};

/// Parses and validates a JSON case. Throws SchemaError for structural
/// problems and ValidationError for physically invalid values.
CaseDefinition parse_case(const std::string& text);

/// JSON text with every default made explicit, plus derived quantities
/// under "derived" (ignored when parsed back).
std::string serialise_case(const CaseDefinition& def);

struct CaseSetup {
    Problem problem;
    std::vector<ScheduleStage> schedule;
    std::optional<ArcSpec> arc;
};

/// Mesh, geometry, material, lumped loads and boundary conditions.
CaseSetup build_problem(const CaseDefinition& def);

/// Cell loads per unit length for a set of point loads on `mesh`.
void lump_point_load(CellLoads& loads, const BeamMesh& mesh, double s, const Vec3& force, const Vec3& torque);

} // namespace fvbeam
