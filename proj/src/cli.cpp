#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "crooked/io.hpp"

namespace crooked {

namespace {

int log_level() {
    const char* env = std::getenv("CROOKED_LOG");
    if (!env) return 0;
    const std::string v = env;
    if (v == "debug") return 2;
    if (v == "info") return 1;
    return 0;
}

void log_info(const std::string& msg) {
    if (log_level() >= 1) std::cerr << "crooked: " << msg << "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot read " + path);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot write " + path);
    os << content;
    if (!os.flush()) throw IoError("write failed for " + path);
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        if (c == '\n')
            out += "\\n";
        else
            out.push_back(c);
    }
    return out;
}

void emit_error(const char* type, const std::string& message) {
    std::cerr << "{\"error\": {\"type\": \"" << type << "\", \"message\": \""
              << json_escape(message) << "\"}}" << std::endl;
}

Scene load_scene(const std::string& path, size_t minPlanes) {
    const Scene scene = parse_scene(read_file(path));
    if (scene.planes.size() < minPlanes)
        throw SchemaError("scene must contain at least " + std::to_string(minPlanes) +
                          " planes");
    return scene;
}

int cmd_check(const std::string& scenePath, double tol) {
    const Scene scene = load_scene(scenePath, 2);
    const DisjointVerdict verdict = crooked_disjoint(scene.planes[0], scene.planes[1], tol);
    std::cout << "{\"verdict\": \"" << to_string(verdict) << "\"}" << std::endl;
    return 0;
}

int cmd_foliate(const std::string& scenePath, const std::string& outPath, int samples,
                double tol, int nMax) {
    const Scene scene = load_scene(scenePath, 2);
    const Foliation fol = build_foliation(scene.planes[0], scene.planes[1], tol, nMax);
    log_info("solver n=" + std::to_string(fol.curve.basis().n) +
             " residual=" + fmt17(fol.curve.residual()));
    const ValidationReport report = validate_foliation(fol, samples);
    write_file(outPath, write_foliation_file(make_foliation_file(fol, samples)));
    if (!report.passed()) {
        emit_error("ValidationFailure",
                   "pairwise failures: " + std::to_string(report.failures.size()) +
                       ", orientation: " + std::to_string(report.orientationViolations.size()) +
                       ", derivative: " +
                       std::to_string(report.derivativeConeViolations.size()));
        return 3;
    }
    std::cout << "{\"status\": \"ok\", \"samples\": " << samples
              << ", \"residual\": " << fmt17(fol.curve.residual()) << "}" << std::endl;
    return 0;
}

int cmd_mesh(const std::string& foliationPath, const std::string& outDir, double radius,
             int resolution) {
    const FoliationFile f = parse_foliation_file(read_file(foliationPath));
    std::vector<Mesh> meshes;
    meshes.reserve(f.samples.size());
    for (const FoliationSample& s : f.samples)
        meshes.push_back(mesh_crooked_plane(CrookedPlane(s.vertex, s.direction), radius,
                                            resolution));
    std::filesystem::create_directories(outDir);
    const auto files = export_obj(meshes, outDir);
    log_info("wrote " + std::to_string(files.size()) + " OBJ files");
    std::cout << "{\"status\": \"ok\", \"files\": " << files.size() << "}" << std::endl;
    return 0;
}

int cmd_oracle(const std::string& scenePath, double radius, int resolution) {
    const Scene scene = load_scene(scenePath, 2);
    const auto witness =
        crooked_intersect_oracle(scene.planes[0], scene.planes[1], radius, resolution);
    if (!witness) {
        // No crossing within the sampled ball; not a global certificate.
        std::cout << "{\"witness\": null, \"radius\": " << fmt17(radius) << "}" << std::endl;
        return 0;
    }
    std::cout << "{\"witness\": {\"point\": [" << fmt17(witness->point.x) << ","
              << fmt17(witness->point.y) << "," << fmt17(witness->point.z)
              << "], \"pieceA\": \"" << to_string(witness->pieceA.kind) << "\", \"pieceB\": \""
              << to_string(witness->pieceB.kind)
              << "\", \"separation\": " << fmt17(witness->separation) << "}}" << std::endl;
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& argv) {
    CLI::App app{"crooked-plane geometry kernel"};
    app.require_subcommand(1);

    std::string scenePath, outPath, foliationPath, outDir;
    double tol = kPairTol;
    double foliateTol = kSolverTol;
    int samples = 50;
    int nMax = kDefaultNMax;
    double meshRadius = 5.0;
    int meshResolution = 32;
    double oracleRadius = 20.0;
    int oracleResolution = 128;

    CLI::App* check = app.add_subcommand("check", "disjointness verdict for planes 0 and 1");
    check->add_option("--scene", scenePath, "scene JSON file")->required();
    check->add_option("--tol", tol, "tolerance band");

    CLI::App* foliate =
        app.add_subcommand("foliate", "build and validate a foliation between planes 0 and 1");
    foliate->add_option("--scene", scenePath, "scene JSON file")->required();
    foliate->add_option("--out", outPath, "foliation output file")->required();
    foliate->add_option("--samples", samples, "validation/serialization grid size");
    foliate->add_option("--tol", foliateTol, "solver endpoint tolerance");
    foliate->add_option("--n-max", nMax, "cap of the concentration escalation");

    CLI::App* mesh = app.add_subcommand("mesh", "export sampled leaves as OBJ");
    mesh->add_option("--foliation", foliationPath, "foliation JSON file")->required();
    mesh->add_option("--out", outDir, "output directory")->required();
    mesh->add_option("--radius", meshRadius, "meshing ball radius");
    mesh->add_option("--resolution", meshResolution, "grid cells per patch axis");

    CLI::App* oracle = app.add_subcommand("oracle", "brute-force crossing search");
    oracle->add_option("--scene", scenePath, "scene JSON file")->required();
    oracle->add_option("--radius", oracleRadius, "search ball radius");
    oracle->add_option("--resolution", oracleResolution, "mesh resolution");

    std::vector<char*> cargv;
    cargv.reserve(argv.size());
    for (const std::string& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));

    try {
        app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        emit_error("UsageError", e.what());
        return 2;
    }

    try {
        if (check->parsed()) return cmd_check(scenePath, tol);
        if (foliate->parsed()) return cmd_foliate(scenePath, outPath, samples, foliateTol, nMax);
        if (mesh->parsed()) return cmd_mesh(foliationPath, outDir, meshRadius, meshResolution);
        if (oracle->parsed()) return cmd_oracle(scenePath, oracleRadius, oracleResolution);
        emit_error("UsageError", "no subcommand given");
        return 2;
    } catch (const ParseError& e) {
        emit_error("ParseError", e.what());
        return 2;
    } catch (const SchemaError& e) {
        emit_error("SchemaError", e.what());
        return 2;
    } catch (const GeometryError& e) {
        emit_error("GeometryError", e.what());
        return 2;
    } catch (const InvalidParamsError& e) {
        emit_error("InvalidParams", e.what());
        return 2;
    } catch (const NotDisjointError& e) {
        emit_error("NotDisjoint", e.what());
        return 4;
    } catch (const DegenerateCaseError& e) {
        emit_error("DegenerateCase", e.what());
        return 4;
    } catch (const InfeasibleError& e) {
        emit_error("Infeasible", e.what());
        return 4;
    } catch (const IoError& e) {
        emit_error("IoError", e.what());
        return 1;
    } catch (const Error& e) {
        emit_error("Error", e.what());
        return 1;
    }
}

}  // namespace crooked
