#include "fvbeam/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    CLI::App app{"Finite-volume solver for geometrically exact beams"};
    app.require_subcommand(1);

    fvbeam::RunOptions run;
    std::size_t write_every = 0;
    CLI::App* run_cmd = app.add_subcommand("run", "Run a case file");
    run_cmd->add_option("case", run.case_path, "Case file (JSON)")->required();
    run_cmd->add_option("--out", run.out_dir, "Output directory")->capture_default_str();
    run_cmd->add_option("--write-every", write_every, "Deformed-shape snapshot frequency (increments)")
        ->check(CLI::PositiveNumber);

    fvbeam::VerifyOptions verify;
    CLI::App* verify_cmd = app.add_subcommand("verify", "Run the acceptance checks");
    verify_cmd->add_option("--filter", verify.filter, "Check number or name substring");
    verify_cmd->add_option("--stiffness-scale", verify.stiffness_scale,
                           "Scale every material stiffness (harness fault injection)")
        ->check(CLI::PositiveNumber);

    fvbeam::ConvergenceOptions conv;
    std::string meshes;
    std::size_t reference = 0;
    CLI::App* conv_cmd = app.add_subcommand("convergence", "Mesh refinement study of a case file");
    conv_cmd->add_option("case", conv.case_path, "Case file (JSON)")->required();
    conv_cmd->add_option("--meshes", meshes, "Comma-separated cell counts, at least three")->required();
    conv_cmd->add_option("--reference", reference, "Cell count of the reference solution")
        ->check(CLI::Range(std::size_t{2}, std::size_t{1000000}));
    conv_cmd->add_option("--out", conv.out_dir, "Output directory")->capture_default_str();
    conv_cmd->add_option("--workers", conv.workers, "Parallel workers (0 = hardware threads)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : fvbeam::kExitUsage;
    }

    if (*run_cmd) {
        if (write_every > 0) run.write_every = write_every;
        return fvbeam::cmd_run(run, std::cout, std::cerr);
    }
    if (*verify_cmd) {
        return fvbeam::cmd_verify(verify, std::cout);
    }
    try {
        conv.meshes = fvbeam::parse_mesh_list(meshes);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return fvbeam::kExitUsage;
    }
    if (reference > 0) conv.reference = reference;
    return fvbeam::cmd_convergence(conv, std::cout, std::cerr);
}
