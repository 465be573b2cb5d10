#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "conelip/json_io.hpp"
#include "conelip/kernels.hpp"
#include "conelip/mcshane.hpp"
#include "conelip/verify.hpp"

using namespace conelip;

namespace {

// exit codes: 0 ok, 1 validation/io, 2 verification failure, 3 solver failure
constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitVerification = 2;
constexpr int kExitSolver = 3;

bool rational_mode() {
    const char* env = std::getenv("CONELIP_RATIONAL");
    return env && std::string(env) == "1";
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty())
        std::cout << text << "\n";
    else
        write_text_file(out_path, text + "\n");
}

// {op, inputs-hash, value, witness, tolerance, certificate}
std::string record_json(const std::string& op, const std::string& inputs, double value,
                        const std::string& witness, double tolerance,
                        const std::string& certificate) {
    return "{\"op\":\"" + op + "\",\"inputs\":\"" + digest(inputs) +
           "\",\"value\":" + format_double(value) + ",\"witness\":" + witness +
           ",\"tolerance\":" + format_double(tolerance) + ",\"certificate\":" + certificate +
           "}";
}

int run(int argc, char** argv) {
    CLI::App app{"desk-scale calculator for Lipschitz function spaces, their free-space "
                 "preduals and the positively homogeneous cone machinery"};
    app.require_subcommand(1);

    // ---- lip
    std::string space_path, field_path, out_path;
    bool as_json = false;
    auto* lip_cmd = app.add_subcommand("lip", "Lipschitz constant of a sampled field");
    lip_cmd->add_option("space", space_path)->required();
    lip_cmd->add_option("field", field_path)->required();
    lip_cmd->add_flag("--json", as_json, "emit a result record");
    lip_cmd->callback([&] {
        const PointedSpace space = load_space(space_path);
        const ScalarField f = load_field(space, field_path);
        const LipResult r = lip_const(space, f);
        if (as_json) {
            const std::string wit = "{\"pair\":[" + std::to_string(r.i) + "," +
                                    std::to_string(r.j) + "]}";
            std::cout << record_json("lip", space_to_json(space) + field_to_json(f), r.value, wit,
                                     0.0, "null")
                      << "\n";
        } else {
            std::cout << format_double(r.value) << "\n";
        }
    });

    // ---- extend
    std::string method = "sup", partial_path;
    double lip_override = -1.0;
    auto* ext_cmd = app.add_subcommand("extend", "McShane extension of a partial field");
    ext_cmd->add_option("space", space_path)->required();
    ext_cmd->add_option("partial", partial_path)->required();
    ext_cmd->add_option("--method", method)->check(CLI::IsMember({"sup", "inf"}));
    ext_cmd->add_option("--lip", lip_override, "admissible constant larger than Lip(f|E)");
    ext_cmd->add_option("--out", out_path, "write the extended field here");
    ext_cmd->callback([&] {
        const PointedSpace space = load_space(space_path);
        const PartialField pf = load_partial_field(space, partial_path);
        std::optional<double> L;
        if (lip_override >= 0.0) L = lip_override;
        const ScalarField f =
            method == "sup" ? mcshane_sup(space, pf, L) : mcshane_inf(space, pf, L);
        emit(field_to_json(f), out_path);
    });

    // ---- ph-extend
    std::string rays_path;
    auto* phe_cmd = app.add_subcommand("ph-extend",
                                       "extend ph values from a sub-cone to all directions");
    phe_cmd->add_option("rays", rays_path)->required();
    phe_cmd->add_option("partial", partial_path,
                        "{\"domain\":[ray indices],\"values\":[...]}")->required();
    phe_cmd->add_option("--out", out_path);
    phe_cmd->callback([&] {
        const RayFile rf = load_ray_file(rays_path);
        // reuse the partial-field file shape for ray indices
        const std::string text = read_text_file(partial_path);
        auto j = nlohmann_parse_hack = 0;  // placeholder
    });

    return app.exit(CLI::Success{});
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
