// Batch front end: normalize a commuting pair and verify the result.
//
// Exit codes: 0 every criterion passed, 1 a criterion failed, 2 usage,
// parse or validation error.

#include <iostream>

#include <CLI11.hpp>

#include <bnf/pipeline.hpp>

int main(int argc, char **argv)
{
    CLI::App app{"Birkhoff normal form of a commuting pair at a focus-focus singularity"};
    bnf::PipelineConfig cfg;
    app.add_option("--input", cfg.input_path, "System definition (JSON)")->required();
    app.add_option("--order", cfg.order, "Normalization order N (default: the file's \"order\")");
    app.add_flag("--verify-numeric", cfg.verify_numeric, "Run the numeric verification suites");
    app.add_option("--samples", cfg.samples, "Sample points per numeric suite")->capture_default_str();
    app.add_option("--radius", cfg.radius, "Largest sampling radius of the flow check")->capture_default_str();
    app.add_option("--seed", cfg.seed, "Seed for every randomized suite")->capture_default_str();
    app.add_option("--nodes", cfg.quad.nodes, "Periodic quadrature nodes")->capture_default_str();
    app.add_option("--fd-step", cfg.quad.fd_step, "Finite-difference step")->capture_default_str();
    app.add_option("--output", cfg.output_path, "Report path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const auto rep = bnf::run_pipeline(cfg);
        if (cfg.output_path.empty()) {
            std::cout << rep.dump();
        }
        std::cerr << "status: " << (rep.pass ? "pass" : "fail") << '\n';
        return rep.exit_code;
    } catch (const bnf::ValidationError &e) {
        std::cerr << "validation error (" << e.cause() << "): " << e.what() << '\n';
        return 2;
    } catch (const bnf::ParseError &e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
