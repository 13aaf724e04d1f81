#include "fvbeam/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <numbers>
#include <thread>

namespace fvbeam {

EulerSolution euler_analytic(double Mz, double L, double EI)
{
    if (!(EI > 0.0) || !(L > 0.0)) {
        throw ValidationError("euler_analytic needs EI > 0 and L > 0");
    }
    EulerSolution s;
    if (Mz == 0.0) return s;
    s.psi_z = Mz * L / EI;
    const double half = 0.5 * s.psi_z;
    s.w_x = L - (L / half) * std::sin(half) * std::cos(half);
    s.w_y = (L / half) * std::sin(half) * std::sin(half);
    return s;
}

double relative_error(double numeric, double reference)
{
    if (reference == 0.0) {
        throw UndefinedReferenceError("relative error is undefined for a zero reference");
    }
    return std::abs((numeric - reference) / reference) * 100.0;
}

double convergence_order(const std::vector<double>& errors, const std::vector<double>& h)
{
    if (errors.size() != h.size()) throw std::invalid_argument("errors and mesh sizes differ in length");
    if (errors.size() < 3) throw std::invalid_argument("convergence order needs at least 3 mesh levels");
    for (std::size_t i = 0; i < errors.size(); ++i) {
        if (!(errors[i] > 0.0)) throw std::invalid_argument("convergence order needs positive errors");
        if (!(h[i] > 0.0)) throw std::invalid_argument("mesh sizes must be positive");
    }
    const double ratio = h[1] / h[0];
    for (std::size_t i = 2; i < h.size(); ++i) {
        if (std::abs(h[i] / h[i - 1] - ratio) > 1e-9 * std::abs(ratio) || ratio == 1.0) {
            throw std::invalid_argument("mesh sizes must form a geometric sequence");
        }
    }
    const auto n = static_cast<double>(h.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        const double x = std::log(h[i]);
        const double y = std::log(errors[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

BucklingResult detect_buckling(const CaseSetup& setup)
{
    BucklingResult out;
    out.run = run_schedule(setup.problem, setup.schedule);
    out.increments = out.run.history.size();
    if (!out.run.aborted) {
        throw ScheduleExhaustedError("every increment converged; the schedule ends below the critical load");
    }
    out.critical_load = out.run.last_converged_load;
    out.failed_load = out.run.history.back().load_factor;
    out.failure = out.run.history.back().failure;
    return out;
}

double tangent_rotation_angle(const BeamState& state, const InitialGeometry& geom, std::size_t f,
                              const Vec3& normal)
{
    const Vec3 a = geom.r0prime_f[f];
    const Vec3 b = state.rprime_f[f];
    return std::atan2(normal.normalized().dot(a.cross(b)), a.dot(b));
}

namespace {

constexpr double kPi = std::numbers::pi;

CaseDefinition pure_bending_base()
{
    CaseDefinition c;
    c.geometry.kind = GeometryDef::Kind::Straight;
    c.geometry.length = 10.0;
    c.material.EA = 1e4;
    c.material.GA2 = 5e3;
    c.material.GA3 = 5e3;
    c.material.GJ = 100.0;
    c.material.EI2 = 100.0;
    c.material.EI3 = 100.0;
    c.cells = 10;
    c.boundaries[0].kind = BoundaryKind::Clamped;
    c.boundaries[1].kind = BoundaryKind::Free;
    return c;
}

CaseDefinition quarter_arc_base(double span)
{
    CaseDefinition c;
    c.geometry.kind = GeometryDef::Kind::Arc;
    c.geometry.radius = 100.0;
    c.geometry.span = span;
    c.geometry.start_angle = -90.0 * kRadiansPerDegree;
    c.geometry.centre = Vec3(0.0, 100.0, 0.0);
    return c;
}

} // namespace

std::vector<CaseDefinition> standard_cases()
{
    std::vector<CaseDefinition> out;

    // Rigid rotation of a quarter circle driven by its west end.
    {
        CaseDefinition c = quarter_arc_base(90.0 * kRadiansPerDegree);
        c.name = "rigid_rotation";
        c.material.from_section = true;
        c.material.E = 1e9;
        c.material.G = 0.5e9;
        c.material.section.shape = SectionDef::Shape::Circle;
        c.material.section.radius = 1.0;
        c.cells = 10;
        c.boundaries[0].kind = BoundaryKind::Prescribed;
        c.boundaries[0].rotation = Vec3(20.0 * kPi, 0.0, 0.0);
        c.boundaries[1].kind = BoundaryKind::Free;
        c.schedule = {{100, 1.0}};
        out.push_back(c);
    }

    {
        CaseDefinition c = pure_bending_base();
        c.name = "pure_bending";
        c.boundaries[1].moment = Vec3(0.0, 0.0, 2.5 * kPi);
        c.schedule = {{1, 1.0}};
        const EulerSolution e = euler_analytic(2.5 * kPi, 10.0, 100.0);
        c.reference.displacement = Vec3(e.w_x, e.w_y, 0.0);
        out.push_back(c);
    }

    {
        CaseDefinition c = pure_bending_base();
        c.name = "helix";
        c.cells = 100;
        c.boundaries[1].force = Vec3(0.0, 0.0, 50.0);
        c.boundaries[1].moment = Vec3(0.0, 0.0, 200.0 * kPi);
        c.schedule = {{2000, 1.0}};
        c.output.write_every = 20;
        out.push_back(c);
    }

    CaseDefinition bend = quarter_arc_base(45.0 * kRadiansPerDegree);
    bend.material.from_section = true;
    bend.material.E = 1e7;
    bend.material.G = 0.5e7;
    bend.material.section.shape = SectionDef::Shape::Rectangle;
    bend.material.section.width = 1.0;
    bend.material.section.height = 1.0;
    bend.cells = 10;
    bend.boundaries[0].kind = BoundaryKind::Clamped;
    bend.schedule = {{10, 1.0}};
    {
        CaseDefinition c = bend;
        c.name = "bend45";
        c.boundaries[1].kind = BoundaryKind::Free;
        c.boundaries[1].force = Vec3(0.0, 0.0, 600.0);
        out.push_back(c);
    }
    {
        CaseDefinition c = bend;
        c.name = "bend45_driven";
        c.boundaries[1].kind = BoundaryKind::Hinged;
        c.boundaries[1].displacement = Vec3(-23.5607, -13.6048, 53.4756);
        c.reference.force = Vec3(0.0, 0.0, 600.0);
        out.push_back(c);
    }

    // 215 degree arch, symmetric about the y axis, hinged west and clamped
    // east. A unit-area circle with E = 4 pi 1e4 gives EI = GJ = 1e4.
    {
        CaseDefinition c;
        c.name = "arch";
        c.geometry.kind = GeometryDef::Kind::Arc;
        c.geometry.radius = 100.0;
        c.geometry.span = 215.0 * kRadiansPerDegree;
        c.geometry.start_angle = 197.5 * kRadiansPerDegree;
        c.geometry.clockwise = true;
        c.material.from_section = true;
        c.material.E = 4.0 * kPi * 1e4;
        c.material.G = 2.0 * kPi * 1e4;
        c.material.section.shape = SectionDef::Shape::Circle;
        c.material.section.radius = 1.0 / std::sqrt(kPi);
        c.cells = 40;
        c.boundaries[0].kind = BoundaryKind::Hinged;
        c.boundaries[1].kind = BoundaryKind::Clamped;
        PointLoad p;
        p.at_crown = true;
        p.force = Vec3(0.0, -1.0, 0.0);
        c.loads.points.push_back(p);
        c.schedule = {{8, 8.0}, {800, 12.0}};
        c.output.monitors = {Monitor{Monitor::Kind::Face, 20}};
        out.push_back(c);
    }
    return out;
}

CaseDefinition standard_case(const std::string& name)
{
    for (CaseDefinition& c : standard_cases()) {
        if (c.name == name) return c;
    }
    throw std::invalid_argument("unknown standard case '" + name + "'");
}

std::vector<std::string> study_quantities() { return {"w_x", "w_y", "w_z", "w", "n_x", "n_y", "n_z"}; }

namespace {

struct MeshRun {
    MonitorSample tip;
    double seconds = 0.0;
    bool completed = false;
};

MeshRun run_mesh(CaseDefinition def, std::size_t cells)
{
    def.cells = cells;
    const CaseSetup setup = build_problem(def);
    const auto t0 = std::chrono::steady_clock::now();
    const RunResult r = run_schedule(setup.problem, setup.schedule);
    MeshRun out;
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.completed = !r.aborted;
    out.tip = sample(setup.problem.monitors.at(0), r.final_state, setup.problem.mesh);
    return out;
}

std::vector<double> quantity_values(const MonitorSample& s)
{
    return {s.w.x(), s.w.y(), s.w.z(), s.w.norm(), s.n.x(), s.n.y(), s.n.z()};
}

} // namespace

BenchmarkResult mesh_study(const CaseDefinition& def, const std::vector<std::size_t>& meshes,
                           std::optional<std::size_t> reference_mesh, unsigned workers)
{
    if (meshes.size() < 3) throw std::invalid_argument("a mesh study needs at least 3 mesh levels");
    if (def.output.monitors.empty()) throw std::invalid_argument("a mesh study needs a monitor");
    if (!reference_mesh && !def.reference.displacement && !def.reference.force) {
        throw std::invalid_argument("no reference: give a reference mesh or an analytic reference block");
    }

    std::vector<std::size_t> jobs = meshes;
    if (reference_mesh) jobs.push_back(*reference_mesh);
    std::vector<MeshRun> runs(jobs.size());

    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(jobs.size()));
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> failures(jobs.size());
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t k = next++; k < jobs.size(); k = next++) {
                try {
                    runs[k] = run_mesh(def, jobs[k]);
                } catch (...) {
                    failures[k] = std::current_exception();
                }
            }
        });
    }
    for (std::thread& t : pool) t.join();
    for (const std::exception_ptr& e : failures) {
        if (e) std::rethrow_exception(e);
    }

    BenchmarkResult out;
    out.case_id = def.name;
    out.meshes = meshes;
    out.quantities = study_quantities();
    out.reference_mesh = reference_mesh;
    const std::size_t Q = out.quantities.size();

    // Reference values, compared by magnitude.
    std::vector<std::optional<double>> ref(Q);
    if (reference_mesh) {
        const std::vector<double> v = quantity_values(runs.back().tip);
        for (std::size_t q = 0; q < Q; ++q) ref[q] = std::abs(v[q]);
    } else {
        if (def.reference.displacement) {
            const Vec3 d = def.reference.displacement->cwiseAbs();
            ref[0] = d.x();
            ref[1] = d.y();
            ref[2] = d.z();
            ref[3] = d.norm();
        }
        if (def.reference.force) {
            const Vec3 f = def.reference.force->cwiseAbs();
            ref[4] = f.x();
            ref[5] = f.y();
            ref[6] = f.z();
        }
    }
    const Vec3 ref_w = reference_mesh ? runs.back().tip.w.cwiseAbs()
                                      : def.reference.displacement.value_or(Vec3::Zero()).cwiseAbs();
    out.reference = ref;

    for (std::size_t i = 0; i < meshes.size(); ++i) {
        const MeshRun& r = runs[i];
        out.h.push_back(def.geometry.beam_length() / static_cast<double>(meshes[i]));
        out.values.push_back(quantity_values(r.tip));
        out.seconds.push_back(r.seconds);
        out.completed.push_back(r.completed);
        std::vector<std::optional<double>> err(Q);
        for (std::size_t q = 0; q < Q; ++q) {
            if (!ref[q] || *ref[q] == 0.0) continue;
            if (q == 3) {
                if (reference_mesh || def.reference.displacement) {
                    err[q] = (r.tip.w.cwiseAbs() - ref_w).norm() / ref_w.norm() * 100.0;
                }
            } else {
                err[q] = relative_error(std::abs(out.values[i][q]), *ref[q]);
            }
        }
        out.errors.push_back(err);
    }

    out.order.resize(Q);
    for (std::size_t q = 0; q < Q; ++q) {
        std::vector<double> e;
        for (std::size_t i = 0; i < meshes.size(); ++i) {
            if (out.errors[i][q] && *out.errors[i][q] > 0.0) e.push_back(*out.errors[i][q]);
        }
        if (e.size() != meshes.size()) continue;
        try {
            out.order[q] = convergence_order(e, out.h);
        } catch (const std::invalid_argument&) {
        }
    }
    return out;
}

} // namespace fvbeam
