#include "fvbeam/case.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

namespace fvbeam {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

SchemaError::SchemaError(std::string path, std::size_t line, const std::string& message)
    : std::runtime_error(path.empty() ? message
                                      : path + (line > 0 ? " (line " + std::to_string(line) + ")" : std::string()) +
                                            ": " + message),
      path_(std::move(path)), line_(line)
{
}

bool operator==(const BoundarySpec& a, const BoundarySpec& b)
{
    return a.kind == b.kind && a.displacement == b.displacement && a.rotation == b.rotation && a.force == b.force &&
           a.moment == b.moment;
}

bool operator==(const Monitor& a, const Monitor& b) { return a.kind == b.kind && a.index == b.index; }

bool operator==(const ScheduleStage& a, const ScheduleStage& b) { return a.increments == b.increments && a.to == b.to; }

bool operator==(const SolverSettings& a, const SolverSettings& b)
{
    return a.tolerance == b.tolerance && a.max_iterations == b.max_iterations && a.L_ref == b.L_ref;
}

namespace {

// Line of every value in the source text, keyed by JSON pointer. The text
// has already been accepted by the JSON parser, so the scan can be lax.
class LineIndex {
public:
    explicit LineIndex(const std::string& text) : text_(text) { scan_value(""); }

    std::size_t line(const std::string& pointer) const
    {
        auto it = lines_.find(pointer);
        return it == lines_.end() ? 0 : it->second;
    }

private:
    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            if (text_[pos_] == '\n') ++line_;
            ++pos_;
        }
    }

    std::string read_string()
    {
        std::string out;
        ++pos_;
        while (pos_ < text_.size() && text_[pos_] != '"') {
            if (text_[pos_] == '\\') ++pos_;
            if (pos_ < text_.size()) out += text_[pos_++];
        }
        ++pos_;
        return out;
    }

    static std::string escape(const std::string& key)
    {
        std::string out;
        for (char c : key) {
            if (c == '~') out += "~0";
            else if (c == '/') out += "~1";
            else out += c;
        }
        return out;
    }

    void scan_value(const std::string& pointer)
    {
        skip_space();
        if (pos_ >= text_.size()) return;
        lines_.emplace(pointer, line_);
        const char c = text_[pos_];
        if (c == '{') {
            ++pos_;
            for (;;) {
                skip_space();
                if (pos_ >= text_.size() || text_[pos_] == '}') break;
                if (text_[pos_] == ',') {
                    ++pos_;
                    continue;
                }
                const std::size_t key_line = line_;
                const std::string child = pointer + "/" + escape(read_string());
                skip_space();
                ++pos_; // ':'
                lines_.emplace(child, key_line);
                scan_value(child);
            }
            ++pos_;
        } else if (c == '[') {
            ++pos_;
            std::size_t k = 0;
            for (;;) {
                skip_space();
                if (pos_ >= text_.size() || text_[pos_] == ']') break;
                if (text_[pos_] == ',') {
                    ++pos_;
                    continue;
                }
                scan_value(pointer + "/" + std::to_string(k++));
            }
            ++pos_;
        } else if (c == '"') {
            read_string();
        } else {
            while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
                   text_[pos_] != ',' && text_[pos_] != '}' && text_[pos_] != ']') {
                ++pos_;
            }
        }
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::map<std::string, std::size_t> lines_;
};

// A JSON value together with its pointer, for error reporting.
class Node {
public:
    Node(const json& value, std::string path, const LineIndex& index)
        : value_(value), path_(std::move(path)), index_(index)
    {
    }

    [[noreturn]] void schema_error(const std::string& message) const
    {
        throw SchemaError(path_.empty() ? "/" : path_, index_.line(path_), message);
    }

    [[noreturn]] void invalid(const std::string& message) const
    {
        throw ValidationError((path_.empty() ? "/" : path_) + ": " + message);
    }

    const json& value() const { return value_; }

    void expect_object(std::initializer_list<const char*> allowed) const
    {
        if (!value_.is_object()) schema_error("expected an object");
        const std::set<std::string> keys(allowed.begin(), allowed.end());
        for (auto it = value_.begin(); it != value_.end(); ++it) {
            if (!keys.count(it.key())) child(it.key()).schema_error("unknown field");
        }
    }

    bool has(const std::string& key) const { return value_.contains(key); }

    Node child(const std::string& key) const
    {
        if (!value_.contains(key)) schema_error("missing required field \"" + key + "\"");
        return Node(value_.at(key), path_ + "/" + key, index_);
    }

    Node element(std::size_t k) const { return Node(value_.at(k), path_ + "/" + std::to_string(k), index_); }

    std::size_t size() const { return value_.size(); }

    double number() const
    {
        if (!value_.is_number()) schema_error("expected a number");
        const double v = value_.get<double>();
        if (!std::isfinite(v)) invalid("must be finite");
        return v;
    }

    double positive() const
    {
        const double v = number();
        if (!(v > 0.0)) invalid("must be positive, got " + value_.dump());
        return v;
    }

    long integer() const
    {
        if (!value_.is_number_integer()) schema_error("expected an integer");
        return value_.get<long>();
    }

    std::size_t count(long minimum) const
    {
        const long v = integer();
        if (v < minimum) invalid("must be at least " + std::to_string(minimum) + ", got " + std::to_string(v));
        return static_cast<std::size_t>(v);
    }

    bool boolean() const
    {
        if (!value_.is_boolean()) schema_error("expected true or false");
        return value_.get<bool>();
    }

    std::string string() const
    {
        if (!value_.is_string()) schema_error("expected a string");
        return value_.get<std::string>();
    }

    Vec3 vec3() const
    {
        if (!value_.is_array() || value_.size() != 3) schema_error("expected an array of three numbers");
        return Vec3(element(0).number(), element(1).number(), element(2).number());
    }

    void expect_array() const
    {
        if (!value_.is_array()) schema_error("expected an array");
    }

private:
    const json& value_;
    std::string path_;
    const LineIndex& index_;
};

std::string torsion_name(TorsionModel t) { return t == TorsionModel::Polar ? "polar" : "saint-venant"; }

// Angle given either in radians under `key` or in degrees under `key_deg`.
double read_angle(const Node& obj, const std::string& key, double fallback, bool required)
{
    const bool rad = obj.has(key);
    const bool deg = obj.has(key + "_deg");
    if (rad && deg) obj.child(key + "_deg").schema_error("give either \"" + key + "\" or \"" + key + "_deg\"");
    if (rad) return obj.child(key).number();
    if (deg) return obj.child(key + "_deg").number() * kRadiansPerDegree;
    if (required) obj.schema_error("missing required field \"" + key + "\" (or \"" + key + "_deg\")");
    return fallback;
}

GeometryDef parse_geometry(const Node& n)
{
    GeometryDef g;
    if (!n.value().is_object()) n.schema_error("expected an object");
    const std::string type = n.child("type").string();
    if (type == "straight") {
        n.expect_object({"type", "length"});
        g.kind = GeometryDef::Kind::Straight;
        g.length = n.child("length").positive();
    } else if (type == "arc") {
        n.expect_object({"type", "radius", "span", "span_deg", "start_angle", "start_angle_deg", "clockwise",
                         "centre", "plane"});
        g.kind = GeometryDef::Kind::Arc;
        g.radius = n.child("radius").positive();
        g.span = read_angle(n, "span", 0.0, true);
        g.start_angle = read_angle(n, "start_angle", 0.0, false);
        if (n.has("clockwise")) g.clockwise = n.child("clockwise").boolean();
        if (n.has("centre")) g.centre = n.child("centre").vec3();
        if (n.has("plane")) {
            g.plane = n.child("plane").string();
            if (g.plane != "xy" && g.plane != "yz" && g.plane != "zx") {
                n.child("plane").schema_error("expected \"xy\", \"yz\" or \"zx\"");
            }
        }
        const Node span = n.has("span") ? n.child("span") : n.child("span_deg");
        if (!(g.span > 0.0) || !(g.span < 2.0 * std::numbers::pi)) {
            span.invalid("arc span must lie strictly between 0 and 2 pi rad (360 degrees)");
        }
    } else {
        n.child("type").schema_error("expected \"straight\" or \"arc\"");
    }
    return g;
}

MaterialDef parse_material(const Node& n)
{
    MaterialDef m;
    if (!n.value().is_object()) n.schema_error("expected an object");
    if (n.has("E") || n.has("G") || n.has("section")) {
        n.expect_object({"E", "G", "section"});
        m.from_section = true;
        m.E = n.child("E").positive();
        m.G = n.child("G").positive();
        const Node s = n.child("section");
        if (!s.value().is_object()) s.schema_error("expected an object");
        const std::string shape = s.child("shape").string();
        if (shape == "circle") {
            s.expect_object({"shape", "radius"});
            m.section.shape = SectionDef::Shape::Circle;
            m.section.radius = s.child("radius").positive();
        } else if (shape == "rectangle") {
            s.expect_object({"shape", "width", "height", "torsion"});
            m.section.shape = SectionDef::Shape::Rectangle;
            m.section.width = s.child("width").positive();
            m.section.height = s.child("height").positive();
            if (s.has("torsion")) {
                const std::string t = s.child("torsion").string();
                if (t == "polar") m.section.torsion = TorsionModel::Polar;
                else if (t == "saint-venant") m.section.torsion = TorsionModel::SaintVenant;
                else s.child("torsion").schema_error("expected \"polar\" or \"saint-venant\"");
            }
        } else {
            s.child("shape").schema_error("expected \"circle\" or \"rectangle\"");
        }
    } else {
        n.expect_object({"EA", "GA2", "GA3", "GJ", "EI2", "EI3"});
        m.EA = n.child("EA").positive();
        m.GA2 = n.child("GA2").positive();
        m.GA3 = n.child("GA3").positive();
        m.GJ = n.child("GJ").positive();
        m.EI2 = n.child("EI2").positive();
        m.EI3 = n.child("EI3").positive();
    }
    return m;
}

BoundarySpec parse_boundary(const Node& n)
{
    BoundarySpec b;
    if (!n.value().is_object()) n.schema_error("expected an object");
    const Node kind = n.child("kind");
    try {
        b.kind = boundary_kind_from_string(kind.string());
    } catch (const std::invalid_argument&) {
        kind.schema_error("expected \"clamped\", \"hinged\", \"free\" or \"prescribed\"");
    }
    switch (b.kind) {
    case BoundaryKind::Clamped:
    case BoundaryKind::Prescribed:
        n.expect_object({"kind", "displacement", "rotation"});
        break;
    case BoundaryKind::Hinged:
        n.expect_object({"kind", "displacement", "moment"});
        break;
    case BoundaryKind::Free:
        n.expect_object({"kind", "force", "moment"});
        break;
    }
    if (n.has("displacement")) b.displacement = n.child("displacement").vec3();
    if (n.has("rotation")) b.rotation = n.child("rotation").vec3();
    if (n.has("force")) b.force = n.child("force").vec3();
    if (n.has("moment")) b.moment = n.child("moment").vec3();
    return b;
}

LoadsDef parse_loads(const Node& n)
{
    LoadsDef l;
    n.expect_object({"distributed_force", "distributed_torque", "point"});
    if (n.has("distributed_force")) l.distributed_force = n.child("distributed_force").vec3();
    if (n.has("distributed_torque")) l.distributed_torque = n.child("distributed_torque").vec3();
    if (n.has("point")) {
        const Node pts = n.child("point");
        pts.expect_array();
        for (std::size_t k = 0; k < pts.size(); ++k) {
            const Node p = pts.element(k);
            p.expect_object({"at", "force", "torque"});
            PointLoad pl;
            const Node at = p.child("at");
            if (at.value().is_string()) {
                if (at.string() != "crown") at.schema_error("expected an arc length or \"crown\"");
                pl.at_crown = true;
            } else {
                pl.s = at.number();
            }
            if (p.has("force")) pl.force = p.child("force").vec3();
            if (p.has("torque")) pl.torque = p.child("torque").vec3();
            l.points.push_back(pl);
        }
    }
    return l;
}

std::vector<ScheduleStage> parse_schedule(const Node& n)
{
    n.expect_array();
    if (n.size() == 0) n.invalid("the schedule needs at least one stage");
    std::vector<ScheduleStage> out;
    double from = 0.0;
    for (std::size_t k = 0; k < n.size(); ++k) {
        const Node st = n.element(k);
        st.expect_object({"increments", "step", "to"});
        ScheduleStage stage;
        stage.to = st.child("to").number();
        if (stage.to == from) st.child("to").invalid("stage does not change the load factor");
        if (st.has("increments") == st.has("step")) st.schema_error("give exactly one of \"increments\" and \"step\"");
        if (st.has("increments")) {
            stage.increments = st.child("increments").count(1);
        } else {
            const Node step = st.child("step");
            const double h = step.positive();
            const double span = std::abs(stage.to - from);
            const double ratio = span / h;
            const double rounded = std::round(ratio);
            if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-6 * std::max(1.0, rounded)) {
                step.invalid("step does not divide the stage range " + std::to_string(span));
            }
            stage.increments = static_cast<std::size_t>(rounded);
        }
        out.push_back(stage);
        from = stage.to;
    }
    return out;
}

SolverSettings parse_solver(const Node& n)
{
    SolverSettings s;
    n.expect_object({"tolerance", "max_iterations", "reference_length"});
    if (n.has("tolerance")) s.tolerance = n.child("tolerance").positive();
    if (n.has("max_iterations")) s.max_iterations = static_cast<int>(n.child("max_iterations").count(1));
    if (n.has("reference_length")) {
        const Node r = n.child("reference_length");
        s.L_ref = r.number();
        if (s.L_ref < 0.0) r.invalid("must be non-negative (0 selects the beam length)");
    }
    return s;
}

OutputDef parse_output(const Node& n)
{
    OutputDef o;
    n.expect_object({"monitors", "write_every"});
    if (n.has("monitors")) {
        const Node mons = n.child("monitors");
        mons.expect_array();
        o.monitors.clear();
        for (std::size_t k = 0; k < mons.size(); ++k) {
            const Node m = mons.element(k);
            if (!m.value().is_object() || m.size() != 1) m.schema_error("expected {\"face\": i} or {\"cell\": i}");
            Monitor mon;
            if (m.has("face")) {
                mon.kind = Monitor::Kind::Face;
                mon.index = m.child("face").integer();
            } else if (m.has("cell")) {
                mon.kind = Monitor::Kind::Cell;
                mon.index = m.child("cell").integer();
            } else {
                m.schema_error("expected {\"face\": i} or {\"cell\": i}");
            }
            o.monitors.push_back(mon);
        }
    }
    if (n.has("write_every")) o.write_every = n.child("write_every").count(1);
    return o;
}

ReferenceDef parse_reference(const Node& n)
{
    ReferenceDef r;
    n.expect_object({"displacement", "force"});
    if (n.has("displacement")) r.displacement = n.child("displacement").vec3();
    if (n.has("force")) r.force = n.child("force").vec3();
    return r;
}

ordered_json vec_json(const Vec3& v) { return ordered_json::array({v.x(), v.y(), v.z()}); }

} // namespace

ArcSpec GeometryDef::arc() const
{
    ArcSpec a;
    a.radius = radius;
    a.span = span;
    a.start_angle = start_angle;
    a.clockwise = clockwise;
    a.centre = centre;
    if (plane == "yz") {
        a.u = Vec3::UnitY();
        a.v = Vec3::UnitZ();
    } else if (plane == "zx") {
        a.u = Vec3::UnitZ();
        a.v = Vec3::UnitX();
    }
    return a;
}

double GeometryDef::beam_length() const { return kind == Kind::Straight ? length : radius * span; }

Section SectionDef::section() const
{
    return shape == Shape::Circle ? Section::circle(radius) : Section::rectangle(width, height, torsion);
}

Material MaterialDef::material() const
{
    return from_section ? section.section().material(E, G) : Material::from_products(EA, GA2, GA3, GJ, EI2, EI3);
}

CaseDefinition parse_case(const std::string& text)
{
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1;
        for (std::size_t i = 0; i < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') ++line;
        }
        throw SchemaError("/", line, std::string("malformed JSON: ") + e.what());
    }
    const LineIndex index(text);
    const Node n(root, "", index);
    n.expect_object({"name", "geometry", "material", "mesh", "boundary", "loads", "schedule", "solver", "output",
                     "reference", "derived"});

    CaseDefinition def;
    if (n.has("name")) def.name = n.child("name").string();
    def.geometry = parse_geometry(n.child("geometry"));
    def.material = parse_material(n.child("material"));

    const Node mesh = n.child("mesh");
    mesh.expect_object({"cells"});
    def.cells = mesh.child("cells").count(2);

    const Node bnd = n.child("boundary");
    bnd.expect_object({"west", "east"});
    def.boundaries[0] = parse_boundary(bnd.child("west"));
    def.boundaries[1] = parse_boundary(bnd.child("east"));

    if (n.has("loads")) def.loads = parse_loads(n.child("loads"));
    def.schedule = parse_schedule(n.child("schedule"));
    if (n.has("solver")) def.solver = parse_solver(n.child("solver"));
    if (n.has("output")) def.output = parse_output(n.child("output"));
    if (n.has("reference")) def.reference = parse_reference(n.child("reference"));

    // Cross-field checks that need the mesh.
    const BeamMesh m = build_uniform_mesh(def.geometry.beam_length(), def.cells);
    for (std::size_t k = 0; k < def.output.monitors.size(); ++k) {
        try {
            def.output.monitors[k].resolve(m);
        } catch (const std::out_of_range& e) {
            throw ValidationError("/output/monitors/" + std::to_string(k) + ": " + e.what());
        }
    }
    for (std::size_t k = 0; k < def.loads.points.size(); ++k) {
        const PointLoad& p = def.loads.points[k];
        const std::string path = "/loads/point/" + std::to_string(k) + "/at";
        if (p.at_crown && def.geometry.kind != GeometryDef::Kind::Arc) {
            throw ValidationError(path + ": a crown load needs an arc geometry");
        }
        if (!p.at_crown && (p.s < 0.0 || p.s > m.length)) {
            throw ValidationError(path + ": arc length outside [0, " + std::to_string(m.length) + "]");
        }
    }
    def.material.material();
    return def;
}

std::string serialise_case(const CaseDefinition& def)
{
    ordered_json j;
    j["name"] = def.name;

    ordered_json g;
    if (def.geometry.kind == GeometryDef::Kind::Straight) {
        g["type"] = "straight";
        g["length"] = def.geometry.length;
    } else {
        g["type"] = "arc";
        g["radius"] = def.geometry.radius;
        g["span"] = def.geometry.span;
        g["start_angle"] = def.geometry.start_angle;
        g["clockwise"] = def.geometry.clockwise;
        g["centre"] = vec_json(def.geometry.centre);
        g["plane"] = def.geometry.plane;
    }
    j["geometry"] = g;

    ordered_json m;
    const MaterialDef& md = def.material;
    if (md.from_section) {
        m["E"] = md.E;
        m["G"] = md.G;
        ordered_json s;
        if (md.section.shape == SectionDef::Shape::Circle) {
            s["shape"] = "circle";
            s["radius"] = md.section.radius;
        } else {
            s["shape"] = "rectangle";
            s["width"] = md.section.width;
            s["height"] = md.section.height;
            s["torsion"] = torsion_name(md.section.torsion);
        }
        m["section"] = s;
    } else {
        m["EA"] = md.EA;
        m["GA2"] = md.GA2;
        m["GA3"] = md.GA3;
        m["GJ"] = md.GJ;
        m["EI2"] = md.EI2;
        m["EI3"] = md.EI3;
    }
    j["material"] = m;
    j["mesh"] = {{"cells", def.cells}};

    ordered_json bnd;
    const char* names[] = {"west", "east"};
    for (std::size_t k = 0; k < 2; ++k) {
        const BoundarySpec& b = def.boundaries[k];
        ordered_json e;
        e["kind"] = to_string(b.kind);
        if (b.translation_fixed()) e["displacement"] = vec_json(b.displacement);
        if (b.rotation_fixed()) e["rotation"] = vec_json(b.rotation);
        if (!b.translation_fixed()) e["force"] = vec_json(b.force);
        if (!b.rotation_fixed()) e["moment"] = vec_json(b.moment);
        bnd[names[k]] = e;
    }
    j["boundary"] = bnd;

    ordered_json loads;
    loads["distributed_force"] = vec_json(def.loads.distributed_force);
    loads["distributed_torque"] = vec_json(def.loads.distributed_torque);
    loads["point"] = ordered_json::array();
    for (const PointLoad& p : def.loads.points) {
        ordered_json e;
        if (p.at_crown) e["at"] = "crown";
        else e["at"] = p.s;
        e["force"] = vec_json(p.force);
        e["torque"] = vec_json(p.torque);
        loads["point"].push_back(e);
    }
    j["loads"] = loads;

    j["schedule"] = ordered_json::array();
    for (const ScheduleStage& st : def.schedule) {
        ordered_json e;
        e["increments"] = st.increments;
        e["to"] = st.to;
        j["schedule"].push_back(e);
    }

    ordered_json solver;
    solver["tolerance"] = def.solver.tolerance;
    solver["max_iterations"] = def.solver.max_iterations;
    solver["reference_length"] = def.solver.L_ref;
    j["solver"] = solver;

    ordered_json out;
    out["monitors"] = ordered_json::array();
    for (const Monitor& mon : def.output.monitors) {
        ordered_json e;
        e[mon.kind == Monitor::Kind::Face ? "face" : "cell"] = mon.index;
        out["monitors"].push_back(e);
    }
    out["write_every"] = def.output.write_every;
    j["output"] = out;

    if (def.reference.displacement || def.reference.force) {
        ordered_json r;
        if (def.reference.displacement) r["displacement"] = vec_json(*def.reference.displacement);
        if (def.reference.force) r["force"] = vec_json(*def.reference.force);
        j["reference"] = r;
    }

    const Material mat = def.material.material();
    ordered_json d;
    d["length"] = def.geometry.beam_length();
    d["cell_length"] = def.geometry.beam_length() / static_cast<double>(def.cells);
    d["CN"] = vec_json(mat.CN.diagonal());
    d["CM"] = vec_json(mat.CM.diagonal());
    d["total_increments"] = load_factors(def.schedule).size();
    j["derived"] = d;
    return j.dump(2) + "\n";
}

void lump_point_load(CellLoads& loads, const BeamMesh& mesh, double s, const Vec3& force, const Vec3& torque)
{
    if (s < 0.0 || s > mesh.length) {
        throw ValidationError("point load position outside the beam");
    }
    const double L = mesh.cell_length;
    const auto f = static_cast<std::size_t>(std::llround(s / L));
    if (f > 0 && f < mesh.cells && std::abs(s - mesh.faces[f]) <= 1e-9 * L) {
        // On an interior face: both cells sharing it take half.
        for (std::size_t c : {f - 1, f}) {
            loads.force[c] += 0.5 * force / L;
            loads.torque[c] += 0.5 * torque / L;
        }
        return;
    }
    const std::size_t c = std::min(static_cast<std::size_t>(s / L), mesh.cells - 1);
    loads.force[c] += force / L;
    loads.torque[c] += torque / L;
}

CaseSetup build_problem(const CaseDefinition& def)
{
    CaseSetup out;
    Problem& p = out.problem;
    p.mesh = build_uniform_mesh(def.geometry.beam_length(), def.cells);
    if (def.geometry.kind == GeometryDef::Kind::Straight) {
        p.geom = make_straight(def.geometry.length, p.mesh);
    } else {
        out.arc = def.geometry.arc();
        p.geom = make_arc(*out.arc, p.mesh);
    }
    p.material = def.material.material();
    p.loads = CellLoads::zero(def.cells);
    for (std::size_t c = 0; c < def.cells; ++c) {
        p.loads.force[c] = def.loads.distributed_force;
        p.loads.torque[c] = def.loads.distributed_torque;
    }
    for (const PointLoad& pl : def.loads.points) {
        if (pl.at_crown && !out.arc) throw ValidationError("a crown load needs an arc geometry");
        const double s = pl.at_crown ? arc_crown_position(*out.arc) : pl.s;
        lump_point_load(p.loads, p.mesh, s, pl.force, pl.torque);
    }
    p.bcs = def.boundaries;
    p.settings = def.solver;
    p.monitors = def.output.monitors;
    out.schedule = def.schedule;
    return out;
}

} // namespace fvbeam
