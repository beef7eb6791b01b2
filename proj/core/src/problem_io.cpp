#include "setreg/problem_io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace setreg {

using nlohmann::json;

namespace {

void rejectUnknown(const json& obj, std::initializer_list<const char*> allowed,
                   const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || key == a;
        if (!ok) throw ParseError("unknown field '" + key + "' in " + where);
    }
}

const json& field(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError("missing field '" + std::string(key) + "' in " + where);
    return *it;
}

Vec toVec(const json& arr, int dim, const std::string& where) {
    if (!arr.is_array()) throw ParseError(where + " must be an array of numbers");
    if (dim >= 0 && static_cast<int>(arr.size()) != dim)
        throw ValidationError(where + " has dimension " + std::to_string(arr.size()) +
                              ", expected " + std::to_string(dim));
    Vec v(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        if (!arr[i].is_number()) throw ParseError(where + " must contain only numbers");
        v[static_cast<int>(i)] = arr[i].get<double>();
    }
    return v;
}

json fromVec(const Vec& v) {
    json arr = json::array();
    for (int i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

SetDescriptor parseSet(const json& obj, int dim, const std::string& where);

SetDescriptor parseSetInner(const json& obj, int dim, const std::string& where) {
    const std::string type = field(obj, "type", where).get<std::string>();
    if (type == "half-space") {
        rejectUnknown(obj, {"type", "normal", "offset"}, where);
        return SetDescriptor::halfSpace(toVec(field(obj, "normal", where), dim, where + ".normal"),
                                        field(obj, "offset", where).get<double>());
    }
    if (type == "hyperplane") {
        rejectUnknown(obj, {"type", "normal", "offset"}, where);
        return SetDescriptor::hyperplane(toVec(field(obj, "normal", where), dim, where + ".normal"),
                                         field(obj, "offset", where).get<double>());
    }
    if (type == "affine-subspace") {
        rejectUnknown(obj, {"type", "point", "basis"}, where);
        const Vec point = toVec(field(obj, "point", where), dim, where + ".point");
        const json& basis = field(obj, "basis", where);
        if (!basis.is_array()) throw ParseError(where + ".basis must be an array of vectors");
        Mat B(dim, basis.size());
        for (std::size_t j = 0; j < basis.size(); ++j)
            B.col(static_cast<int>(j)) = toVec(basis[j], dim, where + ".basis");
        return SetDescriptor::affineSubspace(point, B);
    }
    if (type == "ball") {
        rejectUnknown(obj, {"type", "center", "radius"}, where);
        return SetDescriptor::ball(toVec(field(obj, "center", where), dim, where + ".center"),
                                   field(obj, "radius", where).get<double>());
    }
    if (type == "polyhedron") {
        rejectUnknown(obj, {"type", "rows"}, where);
        const json& rows = field(obj, "rows", where);
        if (!rows.is_array() || rows.empty())
            throw ParseError(where + ".rows must be a nonempty array");
        std::vector<PolyRow> out;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const std::string rw = where + ".rows[" + std::to_string(i) + "]";
            rejectUnknown(rows[i], {"normal", "offset"}, rw);
            out.push_back({toVec(field(rows[i], "normal", rw), dim, rw + ".normal"),
                           field(rows[i], "offset", rw).get<double>()});
        }
        return SetDescriptor::polyhedron(std::move(out));
    }
    if (type == "union") {
        rejectUnknown(obj, {"type", "pieces"}, where);
        const json& pieces = field(obj, "pieces", where);
        if (!pieces.is_array() || pieces.empty())
            throw ParseError(where + ".pieces must be a nonempty array");
        std::vector<SetDescriptor> out;
        for (std::size_t i = 0; i < pieces.size(); ++i)
            out.push_back(parseSet(pieces[i], dim, where + ".pieces[" + std::to_string(i) + "]"));
        return SetDescriptor::unionOf(std::move(out));
    }
    throw ParseError("unknown set type '" + type + "' in " + where);
}

SetDescriptor parseSet(const json& obj, int dim, const std::string& where) {
    if (!obj.is_object()) throw ParseError(where + " must be an object");
    try {
        return parseSetInner(obj, dim, where);
    } catch (const DimensionError& e) {
        throw ValidationError(where + ": " + e.what());
    }
}

json serializeSet(const SetDescriptor& set) {
    json obj;
    if (const auto* h = std::get_if<HalfSpace>(&set.data())) {
        obj["type"] = "half-space";
        obj["normal"] = fromVec(h->normal);
        obj["offset"] = h->offset;
    } else if (const auto* h = std::get_if<Hyperplane>(&set.data())) {
        obj["type"] = "hyperplane";
        obj["normal"] = fromVec(h->normal);
        obj["offset"] = h->offset;
    } else if (const auto* a = std::get_if<AffineSubspace>(&set.data())) {
        obj["type"] = "affine-subspace";
        obj["point"] = fromVec(a->point);
        json basis = json::array();
        for (int j = 0; j < a->basis.cols(); ++j) basis.push_back(fromVec(a->basis.col(j)));
        obj["basis"] = basis;
    } else if (const auto* b = std::get_if<Ball>(&set.data())) {
        obj["type"] = "ball";
        obj["center"] = fromVec(b->center);
        obj["radius"] = b->radius;
    } else if (const auto* p = std::get_if<Polyhedron>(&set.data())) {
        obj["type"] = "polyhedron";
        json rows = json::array();
        for (const auto& r : p->rows) rows.push_back({{"normal", fromVec(r.normal)}, {"offset", r.offset}});
        obj["rows"] = rows;
    } else if (const auto* u = std::get_if<UnionSet>(&set.data())) {
        obj["type"] = "union";
        json pieces = json::array();
        for (const auto& piece : u->pieces) pieces.push_back(serializeSet(piece));
        obj["pieces"] = pieces;
    }
    return obj;
}

}  // namespace

ProblemFile parse_problem(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed problem file: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("problem file must be a JSON object");
    rejectUnknown(doc,
                  {"schema", "dimension", "sets", "reference_point", "start_points", "solver"},
                  "problem file");
    const int schema = field(doc, "schema", "problem file").get<int>();
    if (schema != 1) throw ParseError("unsupported schema version " + std::to_string(schema));

    ProblemFile pf;
    pf.dimension = field(doc, "dimension", "problem file").get<int>();
    if (pf.dimension < 1) throw ValidationError("dimension must be >= 1");

    const json& sets = field(doc, "sets", "problem file");
    if (!sets.is_array() || sets.empty()) throw ParseError("'sets' must be a nonempty array");
    for (std::size_t i = 0; i < sets.size(); ++i)
        pf.sets.push_back(parseSet(sets[i], pf.dimension, "sets[" + std::to_string(i) + "]"));

    pf.reference_point =
        toVec(field(doc, "reference_point", "problem file"), pf.dimension, "reference_point");
    for (std::size_t i = 0; i < pf.sets.size(); ++i)
        if (!membership(pf.sets[i], pf.reference_point, 1e-9))
            throw ValidationError("reference_point does not belong to sets[" + std::to_string(i) +
                                  "]");

    if (doc.contains("start_points")) {
        const json& sp = doc["start_points"];
        if (!sp.is_array()) throw ParseError("'start_points' must be an array");
        for (std::size_t i = 0; i < sp.size(); ++i)
            pf.start_points.push_back(
                toVec(sp[i], pf.dimension, "start_points[" + std::to_string(i) + "]"));
    }

    if (doc.contains("solver")) {
        const json& sol = doc["solver"];
        rejectUnknown(sol, {"max_iterations", "stop_displacement"}, "solver");
        if (sol.contains("max_iterations")) pf.max_iterations = sol["max_iterations"].get<int>();
        if (sol.contains("stop_displacement"))
            pf.stop_displacement = sol["stop_displacement"].get<double>();
        if (pf.max_iterations < 1 || !(pf.stop_displacement > 0.0))
            throw ValidationError("solver: bad iteration budget or stopping tolerance");
    }
    return pf;
}

ProblemFile load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open problem file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_problem(buf.str());
}

std::string serialize_problem(const ProblemFile& pf) {
    json doc;
    doc["schema"] = 1;
    doc["dimension"] = pf.dimension;
    json sets = json::array();
    for (const auto& s : pf.sets) sets.push_back(serializeSet(s));
    doc["sets"] = sets;
    doc["reference_point"] = fromVec(pf.reference_point);
    json sp = json::array();
    for (const auto& p : pf.start_points) sp.push_back(fromVec(p));
    doc["start_points"] = sp;
    doc["solver"] = {{"max_iterations", pf.max_iterations},
                     {"stop_displacement", pf.stop_displacement}};
    return doc.dump(2) + "\n";
}

void save_problem(const ProblemFile& pf, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write problem file: " + path);
    out << serialize_problem(pf);
}

}  // namespace setreg
