#include "fvbeam/commands.hpp"

#include "fvbeam/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fvbeam {

namespace fs = std::filesystem;

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::ofstream open_output(const fs::path& path)
{
    std::ofstream os(path);
    if (!os) throw UsageError("cannot open " + path.string() + " for writing");
    return os;
}

void prepare_directory(const std::string& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw UsageError("cannot create output directory " + dir);
}

CaseDefinition load_case(const std::string& path) { return parse_case(read_text_file(path)); }

// Reports the failure classes shared by every command; returns the exit code.
int report(const std::exception_ptr& e, std::ostream& err)
{
    try {
        std::rethrow_exception(e);
    } catch (const SchemaError& x) {
        err << "schema error: " << x.what() << '\n';
    } catch (const ValidationError& x) {
        err << "validation error: " << x.what() << '\n';
    } catch (const UsageError& x) {
        err << "error: " << x.what() << '\n';
    } catch (const std::exception& x) {
        err << "error: " << x.what() << '\n';
    }
    return kExitUsage;
}

} // namespace

std::string read_text_file(const std::string& path)
{
    std::ifstream is(path);
    if (!is) throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err)
{
    try {
        CaseDefinition def = load_case(options.case_path);
        if (options.write_every) {
            if (*options.write_every == 0) throw UsageError("--write-every must be at least 1");
            def.output.write_every = *options.write_every;
        }
        const CaseSetup setup = build_problem(def);
        const Problem& p = setup.problem;
        prepare_directory(options.out_dir);
        const fs::path dir(options.out_dir);

        {
            std::ofstream resolved = open_output(dir / "case.json");
            resolved << serialise_case(def);
        }
        out << "case " << (def.name.empty() ? options.case_path : def.name) << ": L = " << p.mesh.length
            << " m, " << p.mesh.cells << " cells, " << load_factors(setup.schedule).size() << " increments\n";

        std::ofstream history = open_output(dir / "history.csv");
        std::ofstream polyline = open_output(dir / "mesh.polyline");
        write_history_header(history, p.monitors, p.mesh);
        write_polyline_snapshot(polyline, initial_state(p.mesh, p.geom), p.geom, true);

        std::size_t last_written = 0;
        const RunResult result = run_schedule(p, setup.schedule, [&](const IncrementReport& rep, const BeamState& s) {
            write_history_row(history, rep);
            if (rep.converged && rep.increment % def.output.write_every == 0) {
                write_polyline_snapshot(polyline, s, p.geom, false);
                last_written = rep.increment;
            }
        });
        const std::size_t converged = result.history.size() - (result.aborted ? 1 : 0);
        if (converged > 0 && last_written != converged) {
            write_polyline_snapshot(polyline, result.final_state, p.geom, false);
        }
        {
            std::ofstream final_state = open_output(dir / "final_state.csv");
            write_final_state(final_state, result.final_state, p.geom, p.mesh);
        }
        if (!history || !polyline) throw UsageError("write failure in " + options.out_dir);

        double iterations = 0.0;
        for (const IncrementReport& h : result.history) iterations += h.iterations;
        const double average = result.history.empty() ? 0.0 : iterations / static_cast<double>(result.history.size());
        if (result.aborted) {
            const IncrementReport& last = result.history.back();
            out << "aborted at increment " << last.increment << " (load factor " << last.load_factor
                << "): " << last.failure << "\nlast converged load factor " << result.last_converged_load
                << '\n';
            return kExitAborted;
        }
        out << "completed " << result.history.size() << " increments, average " << average
            << " iterations\n";
        return kExitOk;
    } catch (...) {
        return report(std::current_exception(), err);
    }
}

int cmd_verify(const VerifyOptions& options, std::ostream& out)
{
    std::size_t failed = 0;
    const std::vector<CheckResult> results = run_acceptance(options, [&](const CheckResult& r) {
        out << format_check(r) << '\n' << std::flush;
        if (!r.pass) ++failed;
    });
    if (results.empty()) {
        out << "no check matches '" << options.filter << "'\n";
        return kExitUsage;
    }
    out << results.size() - failed << '/' << results.size() << " checks passed\n";
    return failed == 0 ? kExitOk : kExitUsage;
}

int cmd_convergence(const ConvergenceOptions& options, std::ostream& out, std::ostream& err)
{
    try {
        if (options.meshes.size() < 3) throw UsageError("a convergence study needs at least 3 mesh levels");
        const CaseDefinition def = load_case(options.case_path);
        prepare_directory(options.out_dir);
        const BenchmarkResult result = mesh_study(def, options.meshes, options.reference, options.workers);
        {
            std::ofstream csv = open_output(fs::path(options.out_dir) / "convergence.csv");
            write_convergence(csv, result);
            if (!csv) throw UsageError("write failure in " + options.out_dir);
        }
        bool complete = true;
        for (std::size_t i = 0; i < result.meshes.size(); ++i) {
            if (!result.completed[i]) {
                out << "mesh " << result.meshes[i] << " aborted before the end of the schedule\n";
                complete = false;
            }
        }
        for (std::size_t q = 0; q < result.quantities.size(); ++q) {
            if (result.order[q]) out << result.quantities[q] << " order " << *result.order[q] << '\n';
        }
        return complete ? kExitOk : kExitAborted;
    } catch (...) {
        return report(std::current_exception(), err);
    }
}

std::vector<std::size_t> parse_mesh_list(const std::string& text)
{
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(item, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad mesh size '" + item + "'");
        }
        if (used != item.size() || v < 2) throw std::invalid_argument("bad mesh size '" + item + "'");
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

} // namespace fvbeam
