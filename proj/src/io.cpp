#include "crooked/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace crooked {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    // force a floating token; integer-looking "-0" would otherwise lose its
    // sign when reparsed
    std::string s = buf;
    if (s.find_first_of(".eE") == std::string::npos) s += ".0";
    return s;
}

void require_keys(const json& obj, std::initializer_list<const char*> keys,
                  const char* where) {
    if (!obj.is_object()) throw SchemaError(std::string(where) + ": expected an object");
    for (const char* k : keys)
        if (!obj.contains(k))
            throw SchemaError(std::string(where) + ": missing key '" + k + "'");
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        bool known = false;
        for (const char* k : keys) known = known || key == k;
        if (!known) throw SchemaError(std::string(where) + ": unknown key '" + key + "'");
    }
}

std::array<double, 3> number_triple(const json& arr, const char* where) {
    if (!arr.is_array() || arr.size() != 3)
        throw SchemaError(std::string(where) + ": expected an array of three numbers");
    std::array<double, 3> out{};
    for (size_t i = 0; i < 3; ++i) {
        if (!arr[i].is_number())
            throw SchemaError(std::string(where) + ": expected an array of three numbers");
        out[i] = arr[i].get<double>();
    }
    return out;
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw crooked::ParseError(std::string("malformed JSON: ") + e.what());
    }
}

}  // namespace

Scene parse_scene(const std::string& text) {
    const json root = parse_json(text);
    require_keys(root, {"planes"}, "scene");
    const json& planes = root["planes"];
    if (!planes.is_array()) throw SchemaError("scene: 'planes' must be an array");

    Scene scene;
    for (const json& entry : planes) {
        require_keys(entry, {"vertex", "direction"}, "plane");
        const auto v = number_triple(entry["vertex"], "vertex");
        const auto d = number_triple(entry["direction"], "direction");
        const LVec3 dir{d[0], d[1], d[2]};
        if (std::abs(lorentz_dot(dir, dir) - 1.0) > 1e-6)
            throw GeometryError("plane direction is not unit spacelike");
        scene.planes.emplace_back(MinPoint{v[0], v[1], v[2]}, normalize_spacelike(dir));
    }
    return scene;
}

FoliationFile make_foliation_file(const Foliation& fol, int samples) {
    if (samples < 2) throw InvalidParamsError("make_foliation_file: samples must be >= 2");
    FoliationFile f;
    f.pathKind = fol.path.kind();
    f.u0 = fol.path.start();
    f.u1 = fol.path.end();
    f.knots = fol.path.knots();
    const BasisFamily& basis = fol.curve.basis();
    f.n = basis.n;
    f.coefficients = basis.c;
    f.delta = basis.delta;
    f.residual = fol.curve.residual();
    for (int i = 0; i < samples; ++i) {
        const double t = static_cast<double>(i) / (samples - 1);
        const CrookedPlane L = leaf(fol, t);
        f.samples.push_back({t, L.vertex, L.direction});
    }
    return f;
}

namespace {

void write_triple(std::ostream& os, double x, double y, double z) {
    os << "[" << fmt17(x) << "," << fmt17(y) << "," << fmt17(z) << "]";
}

}  // namespace

std::string write_foliation_file(const FoliationFile& f) {
    std::ostringstream os;
    os << "{\n  \"path\": {";
    if (f.pathKind == DirectingPath::Kind::Interpolated) {
        os << "\"type\": \"interp\", \"u0\": ";
        write_triple(os, f.u0.x, f.u0.y, f.u0.z);
        os << ", \"u1\": ";
        write_triple(os, f.u1.x, f.u1.y, f.u1.z);
    } else {
        os << "\"type\": \"sampled\", \"knots\": [";
        for (size_t i = 0; i < f.knots.size(); ++i) {
            if (i) os << ", ";
            os << "{\"t\": " << fmt17(f.knots[i].first) << ", \"u\": ";
            write_triple(os, f.knots[i].second.x, f.knots[i].second.y, f.knots[i].second.z);
            os << "}";
        }
        os << "]";
    }
    os << "},\n  \"solver\": {\"n\": " << f.n << ", \"coefficients\": [";
    for (size_t i = 0; i < 6; ++i) {
        if (i) os << ",";
        os << fmt17(f.coefficients[i]);
    }
    os << "], \"delta\": " << fmt17(f.delta) << ", \"residual\": " << fmt17(f.residual)
       << "},\n  \"samples\": [\n";
    for (size_t i = 0; i < f.samples.size(); ++i) {
        const FoliationSample& s = f.samples[i];
        os << "    {\"t\": " << fmt17(s.t) << ", \"vertex\": ";
        write_triple(os, s.vertex.x, s.vertex.y, s.vertex.z);
        os << ", \"direction\": ";
        write_triple(os, s.direction.x, s.direction.y, s.direction.z);
        os << "}" << (i + 1 < f.samples.size() ? "," : "") << "\n";
    }
    os << "  ]\n}\n";
    return os.str();
}

FoliationFile parse_foliation_file(const std::string& text) {
    const json root = parse_json(text);
    require_keys(root, {"path", "solver", "samples"}, "foliation");

    FoliationFile f;
    const json& path = root["path"];
    if (!path.is_object() || !path.contains("type"))
        throw SchemaError("foliation path: missing type");
    const std::string type = path["type"].get<std::string>();
    if (type == "interp") {
        require_keys(path, {"type", "u0", "u1"}, "foliation path");
        f.pathKind = DirectingPath::Kind::Interpolated;
        auto a = number_triple(path["u0"], "u0");
        auto b = number_triple(path["u1"], "u1");
        f.u0 = {a[0], a[1], a[2]};
        f.u1 = {b[0], b[1], b[2]};
    } else if (type == "sampled") {
        require_keys(path, {"type", "knots"}, "foliation path");
        f.pathKind = DirectingPath::Kind::Sampled;
        const json& knots = path["knots"];
        if (!knots.is_array()) throw SchemaError("foliation path: knots must be an array");
        for (const json& kn : knots) {
            require_keys(kn, {"t", "u"}, "knot");
            if (!kn["t"].is_number()) throw SchemaError("knot: t must be a number");
            auto u = number_triple(kn["u"], "knot u");
            f.knots.emplace_back(kn["t"].get<double>(), LVec3{u[0], u[1], u[2]});
        }
        if (!f.knots.empty()) {
            f.u0 = f.knots.front().second;
            f.u1 = f.knots.back().second;
        }
    } else {
        throw SchemaError("foliation path: type must be 'interp' or 'sampled'");
    }

    const json& solver = root["solver"];
    require_keys(solver, {"n", "coefficients", "delta", "residual"}, "solver");
    if (!solver["n"].is_number_integer()) throw SchemaError("solver: n must be an integer");
    f.n = solver["n"].get<int>();
    const json& coeffs = solver["coefficients"];
    if (!coeffs.is_array() || coeffs.size() != 6)
        throw SchemaError("solver: coefficients must be an array of six numbers");
    for (size_t i = 0; i < 6; ++i) {
        if (!coeffs[i].is_number())
            throw SchemaError("solver: coefficients must be an array of six numbers");
        f.coefficients[i] = coeffs[i].get<double>();
    }
    if (!solver["delta"].is_number() || !solver["residual"].is_number())
        throw SchemaError("solver: delta and residual must be numbers");
    f.delta = solver["delta"].get<double>();
    f.residual = solver["residual"].get<double>();

    const json& samples = root["samples"];
    if (!samples.is_array()) throw SchemaError("foliation: samples must be an array");
    for (const json& s : samples) {
        require_keys(s, {"t", "vertex", "direction"}, "sample");
        if (!s["t"].is_number()) throw SchemaError("sample: t must be a number");
        auto v = number_triple(s["vertex"], "sample vertex");
        auto d = number_triple(s["direction"], "sample direction");
        f.samples.push_back({s["t"].get<double>(), MinPoint{v[0], v[1], v[2]},
                             LVec3{d[0], d[1], d[2]}});
    }
    return f;
}

std::vector<std::string> export_obj(const std::vector<Mesh>& meshes,
                                    const std::filesystem::path& directory) {
    std::vector<std::string> written;
    for (size_t m = 0; m < meshes.size(); ++m) {
        char name[32];
        std::snprintf(name, sizeof(name), "leaf_%03zu.obj", m);
        const std::filesystem::path file = directory / name;
        std::ofstream os(file);
        if (!os) throw IoError("export_obj: cannot open " + file.string());

        const Mesh& mesh = meshes[m];
        for (const MinPoint& v : mesh.vertices)
            os << "v " << fmt17(v.x) << " " << fmt17(v.y) << " " << fmt17(v.z) << "\n";
        const PieceKind* current = nullptr;
        for (size_t t = 0; t < mesh.triangles.size(); ++t) {
            if (!current || *current != mesh.pieceTags[t]) {
                os << "g " << to_string(mesh.pieceTags[t]) << "\n";
                current = &mesh.pieceTags[t];
            }
            os << "f " << mesh.triangles[t][0] + 1 << " " << mesh.triangles[t][1] + 1 << " "
               << mesh.triangles[t][2] + 1 << "\n";
        }
        if (!os.flush()) throw IoError("export_obj: write failed for " + file.string());
        written.push_back(file.string());
    }
    return written;
}

}  // namespace crooked
