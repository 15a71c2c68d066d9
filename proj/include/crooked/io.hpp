#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "crooked/foliation.hpp"
#include "crooked/oracle.hpp"

namespace crooked {

/// An ordered list of crooked planes, as read from a scene file.
struct Scene {
    std::vector<CrookedPlane> planes;
};

/**
 * Parses the strict scene schema
 *   {"planes": [{"vertex": [x,y,z], "direction": [x,y,z]}, ...]}
 * Unknown keys are rejected (SchemaError), malformed JSON raises
 * ParseError, and directions must be unit spacelike within 1e-6
 * (GeometryError); accepted directions are renormalized.
 */
Scene parse_scene(const std::string& text);

struct FoliationSample {
    double t = 0.0;
    MinPoint vertex;
    LVec3 direction;
};

/// On-disk description of a foliation: the directing path, the solver
/// block that produced the vertex curve, and sampled leaves.
struct FoliationFile {
    DirectingPath::Kind pathKind = DirectingPath::Kind::Interpolated;
    LVec3 u0, u1;                                  // interp descriptor
    std::vector<std::pair<double, LVec3>> knots;   // sampled descriptor
    int n = 0;
    std::array<double, 6> coefficients{};
    double delta = 0.0;
    double residual = 0.0;
    std::vector<FoliationSample> samples;
};

/// Samples the foliation on a uniform grid and collects the descriptors.
FoliationFile make_foliation_file(const Foliation& fol, int samples);

/// Deterministic serialization; decimals carry 17 significant digits so
/// parse(write(f)) reproduces every sample bit-exactly.
std::string write_foliation_file(const FoliationFile& f);

FoliationFile parse_foliation_file(const std::string& text);

/**
 * Writes one Wavefront OBJ per mesh (leaf_000.obj, leaf_001.obj, ...) into
 * the directory: `v` records with 17-significant-digit decimals, 1-indexed
 * `f` records, and `g stem` / `g wing_plus` / `g wing_minus` group lines.
 * Returns the file paths written.
 */
std::vector<std::string> export_obj(const std::vector<Mesh>& meshes,
                                    const std::filesystem::path& directory);

/**
 * Command line entry point (argv[0] is the program name). Subcommands:
 * check, foliate, mesh, oracle. Verdicts go to standard output as JSON;
 * errors appear as a single-line JSON object on standard error. Exit
 * codes: 0 computed verdict / success, 2 parse or schema errors,
 * 3 foliation validation failure, 4 infeasible or not-disjoint input.
 */
int run_cli(const std::vector<std::string>& argv);

}  // namespace crooked
