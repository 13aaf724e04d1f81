#include "fvbeam/io.hpp"

#include <cstdio>

namespace fvbeam {

std::string format_number(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void put_vec(std::ostream& os, const Vec3& v)
{
    os << ',' << format_number(v.x()) << ',' << format_number(v.y()) << ',' << format_number(v.z());
}

void put_names(std::ostream& os, const std::string& prefix)
{
    os << ',' << prefix << "_x," << prefix << "_y," << prefix << "_z";
}

std::string optional_number(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

} // namespace

void write_history_header(std::ostream& os, const std::vector<Monitor>& monitors, const BeamMesh& mesh)
{
    os << "increment,load_factor,iterations,residual,converged";
    for (const Monitor& mon : monitors) {
        const std::string label = mon.label(mesh);
        for (const char* field : {"w", "psi", "n", "m"}) {
            put_names(os, label + "_" + field);
        }
    }
    os << '\n';
}

void write_history_row(std::ostream& os, const IncrementReport& rep)
{
    os << rep.increment << ',' << format_number(rep.load_factor) << ',' << rep.iterations << ','
       << format_number(rep.residual) << ',' << (rep.converged ? 1 : 0);
    for (const MonitorSample& s : rep.samples) {
        put_vec(os, s.w);
        put_vec(os, s.psi);
        put_vec(os, s.n);
        put_vec(os, s.m);
    }
    os << '\n';
}

void write_final_state(std::ostream& os, const BeamState& state, const InitialGeometry& geom, const BeamMesh& mesh)
{
    os << "face,s";
    for (const char* field : {"r", "w", "psi", "Gamma", "K", "n", "m"}) {
        put_names(os, field);
    }
    os << '\n';
    for (std::size_t f = 0; f < mesh.face_count(); ++f) {
        os << f << ',' << format_number(mesh.faces[f]);
        put_vec(os, geom.r0_f[f] + state.w_f[f]);
        put_vec(os, state.w_f[f]);
        put_vec(os, state.psi_f[f]);
        put_vec(os, state.Gamma_f[f]);
        put_vec(os, state.K_f[f]);
        put_vec(os, state.n_f[f]);
        put_vec(os, state.m_f[f]);
        os << '\n';
    }
}

void write_polyline_snapshot(std::ostream& os, const BeamState& state, const InitialGeometry& geom, bool first)
{
    if (!first) os << '\n';
    for (std::size_t f = 0; f < geom.r0_f.size(); ++f) {
        const Vec3 r = geom.r0_f[f] + state.w_f[f];
        os << format_number(r.x()) << ' ' << format_number(r.y()) << ' ' << format_number(r.z()) << '\n';
    }
}

void write_convergence(std::ostream& os, const BenchmarkResult& result)
{
    os << "mesh,h,quantity,value,reference,error_pct,order\n";
    for (std::size_t i = 0; i < result.meshes.size(); ++i) {
        for (std::size_t q = 0; q < result.quantities.size(); ++q) {
            os << result.meshes[i] << ',' << format_number(result.h[i]) << ',' << result.quantities[q] << ','
               << format_number(result.values[i][q]) << ',' << optional_number(result.reference[q]) << ','
               << optional_number(result.errors[i][q]) << ',' << optional_number(result.order[q]) << '\n';
        }
    }
}

} // namespace fvbeam
